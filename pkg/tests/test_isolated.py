import itertools
from collections import Counter
from fractions import Fraction
from functools import reduce

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from clusterlab.cluster import ExtendedExchangeMatrix
from clusterlab.errors import NotFullRank
from clusterlab.exactlinalg import IntMatrix, invariant_factors, is_full_rank
from clusterlab.hodge import HodgeTable, curious_palindrome
from clusterlab.isolated import (
    component_dims,
    isotypic_table,
    rank1_table,
    strata_counts,
    total_betti,
)
from clusterlab.standard import standard_dims
from strategies import int_matrices


def test_rank1_matches_table():
    for b in range(1, 7):
        summaries, table = isotypic_table(IntMatrix([[b]]))
        assert table == rank1_table(b)
        assert table[(2, 1)] == b - 1
        assert table.row(0) == [1, 1, 1]
        assert len(summaries) == b


def test_rank1_table_betti():
    assert rank1_table(1)[(2, 1)] == 0
    assert rank1_table(3)[(2, 1)] == 2
    for b in range(1, 5):
        assert rank1_table(b).betti() == [1, 1, b]


def test_really_full_rank_single_component():
    c = IntMatrix([[1, 0], [0, 1], [2, 3]])
    summaries, table = isotypic_table(c)
    assert len(summaries) == 1 and summaries[0].j_size == 0
    assert all(k == p for k, p in table.entries)
    assert table.row(0) == [1, 3, 5, 5, 3, 1]


def test_scaled_identity_is_kunneth_power():
    for d in (2, 3):
        for n in (1, 2):
            c = IntMatrix.diagonal([d] * n)
            _, table = isotypic_table(c)
            expected = reduce(HodgeTable.kunneth, [rank1_table(d)] * n)
            assert table == expected


def test_not_full_rank():
    with pytest.raises(NotFullRank):
        isotypic_table(IntMatrix([[1, 1], [2, 2]]))
    with pytest.raises(NotFullRank):
        isotypic_table(IntMatrix([[1, 2]]))


def test_component_dims():
    assert component_dims(1, 1, 0) == {0: 1, 1: 1, 2: 1}
    assert component_dims(1, 1, 1) == {2: 1}
    assert component_dims(1, 2, 1) == {2: 1, 3: 1}


def test_large_group_uses_strata():
    c = IntMatrix.diagonal([1009, 1013])
    summaries, table = isotypic_table(c)
    assert all(s.g is None for s in summaries)
    assert sum(s.multiplicity for s in summaries) == 1009 * 1013
    assert curious_palindrome(table)


def _oracle_strata(c: IntMatrix) -> Counter:
    """Enumerate q in (1/L Z / Z)^n with C q integral and tally non-integral coordinates."""
    m, n = c.shape
    L = max(invariant_factors(c))
    out = Counter()
    for t in itertools.product(range(L), repeat=n):
        q = [Fraction(x, L) for x in t]
        if all(sum(c[i, j] * q[j] for j in range(n)).denominator == 1 for i in range(m)):
            out[sum(1 for x in q if x)] += 1
    return out


@st.composite
def frozen_blocks(draw):
    c = draw(int_matrices(max_rows=3, max_cols=2, bound=4, min_rows=1, min_cols=1))
    assume(c.rows >= c.cols and is_full_rank(c))
    assume(max(invariant_factors(c)) ** c.cols <= 5000)
    return c


@settings(max_examples=200)
@given(frozen_blocks())
def test_isotypic_strata_match_enumeration_oracle(c):
    summaries, _ = isotypic_table(c)
    enumerated = Counter()
    for s in summaries:
        enumerated[s.j_size] += s.multiplicity
    assert enumerated == _oracle_strata(c)
    assert dict(enumerated) == strata_counts(c)


@settings(max_examples=200)
@given(frozen_blocks())
def test_emitted_tables_are_palindromic_and_consistent(c):
    m, n = c.shape
    summaries, table = isotypic_table(c)
    assert curious_palindrome(table)
    assert table.betti() == total_betti(n, m, strata_counts(c))
    b = ExtendedExchangeMatrix(n, m, IntMatrix.block([[IntMatrix.zeros(n, n)], [c]]))
    assert table.standard_row() == [d for _, d in standard_dims(b)]


@settings(max_examples=50)
@given(frozen_blocks())
def test_strata_mode_agrees_with_enumeration(c):
    _, full = isotypic_table(c)
    _, symbolic = isotypic_table(c, cap=0)
    assert full == symbolic
