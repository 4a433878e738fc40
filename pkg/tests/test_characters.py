from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clusterlab.arithmetic.characters import (
    CyclotomicInt,
    DirichletCharacter,
    char_sum,
    char_sum_star,
    cyclotomic_polynomial,
    dir_star,
    dirichlet_group,
    euler_phi,
    frobenius_rank1,
    trivial_character,
    x_multiset,
)
from clusterlab.arithmetic.counting import count_isolated, rank1_count
from clusterlab.errors import NonIntegerSum, PreconditionViolated
from clusterlab.exactlinalg import IntMatrix


def test_small_groups():
    assert dirichlet_group(1) == (trivial_character(1),)
    dir4 = dirichlet_group(4)
    assert len(dir4) == 2 and dir4[0].is_trivial()
    chi = dir4[1]
    assert int(chi(3)) == -1 and int(chi(1)) == 1 and int(chi(2)) == 0


def test_x_of_two():
    (chi,) = x_multiset(2)
    assert chi.modulus == 4 and not chi.is_trivial()


def test_char_sum_star_examples():
    assert char_sum_star(6, 5) == 2
    assert char_sum_star(1, 17) == 1
    assert char_sum_star(7, 15) == 7


def test_cyclotomic_arithmetic():
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    z3 = CyclotomicInt.root(3, 1)
    assert 1 + z3 + z3 * z3 == CyclotomicInt.integer(0)
    assert int(z3 ** 3) == 1
    i = CyclotomicInt.root(4, 1)
    assert int(i * i) == -1
    with pytest.raises(NonIntegerSum):
        int(z3)
    assert (i + z3).order == 12


def test_character_axioms_checked():
    with pytest.raises(ValueError):
        DirichletCharacter(3, 2, (0, 0, 0))  # nonzero at a non-unit
    with pytest.raises(ValueError):
        DirichletCharacter(5, 4, (None, 0, 1, 1, 2))  # not multiplicative


def test_frobenius_examples():
    for p in (5, 7, 11):
        eig = frobenius_rank1(1, p)
        assert [[int(e.value(p)) for e in eig[k]] for k in range(3)] == [[1], [p], [p * p]]
    for p, legendre in ((5, -1), (7, 1), (11, -1), (13, 1)):
        h2 = sorted(int(e.value(p)) for e in frobenius_rank1(3, p)[2])
        assert h2 == sorted([p * p, p, legendre * p])
    with pytest.raises(PreconditionViolated):
        frobenius_rank1(3, 3)
    with pytest.raises(PreconditionViolated):
        frobenius_rank1(2, 2)


@pytest.mark.parametrize("n", range(1, 61))
def test_group_sizes(n):
    group = dirichlet_group(n)
    assert len(group) == euler_phi(n) == len(set(group))
    assert len(dir_star(n)) == n


@pytest.mark.parametrize("n", [1, 2, 3, 8, 12, 15, 16, 20, 24, 60])
def test_orthogonality(n):
    group = dirichlet_group(n)
    units = [a for a in range(n) if gcd(a, n) == 1]
    for chi in group:
        for psi in group:
            total = sum((chi(a) * psi.inverse()(a) for a in units), CyclotomicInt.integer(0))
            assert int(total) == (len(units) if chi == psi else 0)


@settings(max_examples=200)
@given(st.integers(1, 60), st.integers(0, 200))
def test_character_values_periodic_and_multiplicative(n, a):
    for chi in dirichlet_group(n)[:6]:
        assert chi(a) == chi(a + n)
        b = a + 1
        assert chi(a * b) == chi(a) * chi(b)
        assert (int(chi(a)) == 0) if gcd(a, n) != 1 else True


@pytest.mark.parametrize("d", range(1, 25))
def test_x_multiset_size_and_inversion(d):
    x = x_multiset(d)
    assert len(x) == d - 1
    assert sorted(map(repr, x)) == sorted(repr(chi.inverse()) for chi in x)


@pytest.mark.parametrize("d", range(1, 31))
def test_char_sum_reads_modulus_d(d):
    for q in range(1, 80):
        expected = euler_phi(d) if q % d == 1 % d else 0
        assert char_sum(d, q) == expected


def test_frobenius_trace_against_enumeration():
    for d in (1, 2, 3, 4):
        for p in (5, 7):
            if d % p == 0:
                continue
            for a in (1, 2):
                q = p**a
                eig = frobenius_rank1(d, p)[2]
                twist = sum((e.character(p) ** a for e in eig[1:]), CyclotomicInt.integer(0))
                trace = q * q - q + 1 + q * int(twist)
                assert trace == rank1_count(d, q) == count_isolated(IntMatrix([[d]]), q, method="field").count
