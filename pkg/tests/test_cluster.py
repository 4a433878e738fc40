from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clusterlab.cluster import (
    ExactDivisionFailure,
    ExtendedExchangeMatrix,
    LaurentFraction,
    Quiver,
    constant_term_check,
    express_in_seed,
    freeze,
    initial_seed,
    mutate_matrix,
    mutate_path,
    mutate_seed,
    quiver,
)
from clusterlab.exactlinalg import IntMatrix, cokernel, rank
from strategies import eval_laurent, exchange_matrices

EXAMPLE_4 = ExtendedExchangeMatrix.from_rows(
    [[0, -1, -1, -1], [1, 0, 1, -1], [1, -1, 0, 1], [1, 1, -1, 0]]
)
A2 = ExtendedExchangeMatrix.from_rows([[0, 1], [-1, 0]])
A3 = ExtendedExchangeMatrix.from_rows([[0, 1, 0], [-1, 0, 1], [0, -1, 0]])
RANK1 = ExtendedExchangeMatrix.from_rows([[0], [1]], n=1)


def test_mutate_two_by_two():
    assert mutate_matrix(A2, 1).mat == IntMatrix([[0, -1], [1, 0]])


def test_mutate_principal_frozen_rows():
    b = ExtendedExchangeMatrix.from_rows([[0, 1], [-1, 0], [1, 0], [0, 1]], n=2)
    assert mutate_matrix(b, 1).mat.tolist() == [[0, -1], [1, 0], [-1, 1], [0, 1]]


def test_mutate_three_cycle_quiver():
    child = freeze(EXAMPLE_4, [2, 3, 4])
    assert quiver(child).edge_list() == [(1, 2), (2, 3), (3, 1)]  # 2->3->4->2 relabelled
    assert child.labels[:3] == (2, 3, 4)
    mutated = quiver(mutate_matrix(child, 1))
    relabel = {i + 1: child.labels[i] for i in range(3)}
    assert sorted((relabel[i], relabel[j]) for i, j in mutated.edge_list()) == [(2, 4), (3, 2)]


def test_mutation_index_checked():
    with pytest.raises(IndexError):
        mutate_matrix(A2, 3)
    with pytest.raises(IndexError):
        mutate_matrix(A2, 0)


def test_freeze_everything_and_nothing():
    assert freeze(EXAMPLE_4, [1, 2, 3, 4]) == EXAMPLE_4
    torus = freeze(EXAMPLE_4, [])
    assert (torus.n, torus.m, torus.mat.shape) == (0, 4, (4, 0))


def test_freeze_row_order():
    f = freeze(EXAMPLE_4, [3, 1])
    assert f.labels == (1, 3, 2, 4)
    assert f.mat.tolist() == [[0, -1], [1, 0], [1, 1], [1, -1]]


def test_quiver_examples():
    assert quiver(ExtendedExchangeMatrix.from_rows([[0, 0], [0, 0]])).is_edgeless()
    assert quiver(EXAMPLE_4).edge_list() == [(2, 1), (2, 3), (3, 1), (3, 4), (4, 1), (4, 2)]
    assert quiver(A3).edge_list() == [(1, 2), (2, 3)]
    with pytest.raises(ValueError):
        Quiver(2, {(1, 1): 1})


def test_skew_symmetry_enforced():
    with pytest.raises(ValueError):
        ExtendedExchangeMatrix.from_rows([[0, 1], [1, 0]])


def test_json_round_trip():
    data = EXAMPLE_4.to_json()
    assert ExtendedExchangeMatrix.from_json(data) == EXAMPLE_4


def test_rank1_seed_mutation():
    t = mutate_seed(initial_seed(RANK1), 1)
    x_new = t.cluster[0]
    x, y = (LaurentFraction.variable(2, i) for i in (1, 2))
    assert x_new * x == y + 1
    assert x_new.denominator == (1, 0)
    assert x_new.format(["x", "y"]) == "(y + 1)/x"


def test_pentagon_periodicity():
    t0 = initial_seed(A2)
    t = t0
    for k in (1, 2, 1, 2, 1):
        t = mutate_seed(t, k)
    assert t.cluster == (t0.cluster[1], t0.cluster[0])


def test_double_mutation_restores_seed():
    t0 = initial_seed(A3)
    for k in (1, 2, 3):
        assert mutate_seed(mutate_seed(t0, k), k).cluster == t0.cluster


def test_constant_term_examples():
    t0 = initial_seed(RANK1)
    t1 = mutate_seed(t0, 1)
    one = LaurentFraction.constant(2, 1)
    assert constant_term_check(one, [t0, t1])
    xx = t0.cluster[0] * t1.cluster[0]  # equals y + 1
    assert xx.constant_term() == 1
    assert constant_term_check(xx, [t0, t1])

    seeds = [initial_seed(A3)]
    frontier = [seeds[0]]
    for _ in range(4):
        frontier = [mutate_seed(t, k) for t in frontier for k in (1, 2, 3) if not t.path or t.path[-1] != k]
        seeds.extend(frontier)
    x1 = seeds[0].cluster[0]
    assert {express_in_seed(x1, t).constant_term() for t in seeds} == {0}


def test_exact_division_failure():
    x = LaurentFraction.variable(2, 1)
    y = LaurentFraction.variable(2, 2)
    with pytest.raises(ExactDivisionFailure):
        (x + y).exact_div(x + 1)
    assert ((x + y) * (x + 1)).exact_div(x + 1) == x + y


def test_laurent_normal_form():
    x = LaurentFraction.variable(2, 1)
    y = LaurentFraction.variable(2, 2)
    f = (x * x + y) * x ** -1
    assert f.denominator == (1, 0)
    assert f.numerator == {(2, 0): 1, (0, 1): 1}
    assert (x ** -1) * x == LaurentFraction.constant(2, 1)


# --- properties -------------------------------------------------------------


@settings(max_examples=200)
@given(exchange_matrices(max_n=5, max_m=3), st.data())
def test_mutation_is_involution(b, data):
    k = data.draw(st.integers(1, b.n))
    assert mutate_matrix(mutate_matrix(b, k), k) == b


@settings(max_examples=200)
@given(exchange_matrices(max_n=4, max_m=3), st.data())
def test_rank_and_cokernel_mutation_invariant(b, data):
    path = data.draw(st.lists(st.integers(1, b.n), max_size=8))
    c = mutate_path(b, path)
    assert rank(c.mat) == rank(b.mat)
    assert cokernel(c.mat) == cokernel(b.mat)


@settings(max_examples=200)
@given(exchange_matrices(max_n=4, max_m=3), st.data())
def test_freeze_takes_selected_columns(b, data):
    s = data.draw(st.lists(st.integers(1, b.n), unique=True))
    f = freeze(b, s)
    assert f.n == len(s) and f.m == b.m + b.n - len(s)
    for r in range(f.n + f.m):
        for c in range(f.n):
            assert f.mat[r, c] == b[f.labels[r], f.labels[c]]


@st.composite
def small_seed_paths(draw):
    base = draw(st.sampled_from([A2, A3]))
    m = draw(st.integers(0, 1))
    frozen = [draw(st.lists(st.integers(-1, 1), min_size=base.n, max_size=base.n)) for _ in range(m)]
    b = ExtendedExchangeMatrix.from_rows(base.mat.tolist() + frozen, n=base.n)
    path = draw(st.lists(st.integers(1, b.n), min_size=1, max_size=5))
    point = draw(st.lists(st.integers(1, 7), min_size=b.n + b.m, max_size=b.n + b.m))
    return b, path, point


@settings(max_examples=200)
@given(small_seed_paths())
def test_laurent_phenomenon(args):
    """Cluster variables are Laurent, and agree with direct rational evaluation."""
    b, path, point = args
    t = initial_seed(b)
    values = [Fraction(v) for v in point]
    mat = b
    for k in path:
        plus = minus = Fraction(1)
        for i in range(b.n + b.m):
            e = mat.mat[i, k - 1]
            if e > 0:
                plus *= values[i] ** e
            elif e < 0:
                minus *= values[i] ** -e
        values[k - 1] = (plus + minus) / values[k - 1]
        mat = mutate_matrix(mat, k)
        t = mutate_seed(t, k)
    assert t.matrix == mat
    for f, v in zip(t.cluster, values):
        assert all(x >= 0 for x in f.denominator)
        assert eval_laurent(f, point) == v


@settings(max_examples=200)
@given(small_seed_paths())
def test_constant_term_corollary(args):
    b, path, _ = args
    seeds = [initial_seed(b)]
    for k in path:
        seeds.append(mutate_seed(seeds[-1], k))
    last = seeds[-1]
    for f in last.cluster[: b.n]:
        assert constant_term_check(f, seeds)
