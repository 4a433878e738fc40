"""Mixed Hodge tables of isolated cluster varieties.

For an isolated variety with frozen block ``C`` (``m x n``, full rank) the
cohomology splits over the finite group ``G = (C Q^n ∩ Z^m) / C Z^n``.  An
element ``g`` lifts uniquely to ``C q`` with ``q in Q^n``; with
``J(g) = {j : q_j not an integer}`` its component has Poincare polynomial
``t^(2|J|) (1+t+t^2)^(n-|J|) (1+t)^(m-n)``, all of it in weight
``p = k - |J|``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm, prod

from .errors import NotFullRank
from .exactlinalg import IntMatrix, smith_normal_form, unimodular_inverse
from .hodge import HodgeTable

__all__ = [
    "GROUP_CAP",
    "IsotypicSummary",
    "component_dims",
    "isotypic_table",
    "rank1_table",
    "strata_counts",
    "total_betti",
]

GROUP_CAP = 10**6


@dataclass(frozen=True)
class IsotypicSummary:
    """One isotypic component, or a stratum of them when ``g`` is ``None``.

    ``g`` gives coordinates of the group element in ``prod Z/d_i`` (Smith
    basis); ``lift`` is the rational vector ``q``.  ``dims`` maps degree to
    dimension for a single component; ``multiplicity`` counts how many
    components share this data.
    """

    g: tuple[int, ...] | None
    lift: tuple[Fraction, ...] | None
    j_size: int
    dims: dict[int, int] = field(compare=False)
    multiplicity: int = 1

    @property
    def weight_offset(self) -> int:
        """``k - p`` for every class in this component."""
        return self.j_size


def component_dims(n: int, m: int, j: int) -> dict[int, int]:
    """Coefficients of ``t^(2j) (1+t+t^2)^(n-j) (1+t)^(m-n)``."""
    poly = [0] * (2 * j) + [1]
    for factor, times in (([1, 1, 1], n - j), ([1, 1], m - n)):
        for _ in range(times):
            out = [0] * (len(poly) + len(factor) - 1)
            for i, x in enumerate(poly):
                for k, y in enumerate(factor):
                    out[i + k] += x * y
            poly = out
    return {k: c for k, c in enumerate(poly) if c}


def _smith_data(c: IntMatrix):
    m, n = c.shape
    snf = smith_normal_form(c)
    d = snf.diagonal
    if m < n or len(d) < n or any(x == 0 for x in d):
        raise NotFullRank("isotypic decomposition needs a full rank frozen block")
    return d, unimodular_inverse(snf.v)


def _strata_counts(d: tuple[int, ...], v_inv: IntMatrix) -> dict[int, int]:
    """Number of group elements with each ``|J|``, without enumerating the group.

    ``q_j`` is integral iff ``sum_i A_ji t_i = 0 mod L`` with ``L = lcm(d)``
    and ``A_ji = Vinv_ji * L / d_i``; the solution count for a set ``K`` of
    rows comes from the Smith form of ``[A_K | L Id]``.  Inclusion-exclusion
    then gives exact ``J`` patterns.
    """
    n = len(d)
    order = prod(d)
    L = lcm(1, *d)
    a = [[v_inv[j, i] * (L // d[i]) for i in range(n)] for j in range(n)]

    def integral_on(rows):
        if not rows:
            return order
        block = IntMatrix([a[j] + [L * int(j == k) for k in rows] for j in rows], n + len(rows))
        image = L ** len(rows) // prod(smith_normal_form(block).diagonal)
        return order // image

    at_most = {}
    for size in range(n + 1):
        for T in itertools.combinations(range(n), size):
            at_most[T] = integral_on(tuple(j for j in range(n) if j not in T))
    out: dict[int, int] = {}
    for S, _ in at_most.items():
        exact = sum(
            (-1) ** (len(S) - r) * at_most[T]
            for r in range(len(S) + 1)
            for T in itertools.combinations(S, r)
        )
        if exact:
            out[len(S)] = out.get(len(S), 0) + exact
    return out


def isotypic_table(c: IntMatrix, cap: int = GROUP_CAP) -> tuple[list[IsotypicSummary], HodgeTable]:
    """Per-component summaries and the assembled Hodge table for ``(0; C)``.

    Groups larger than ``cap`` are summarized by ``|J|``-strata.
    """
    m, n = c.shape
    d, v_inv = _smith_data(c)
    order = prod(d)
    summaries: list[IsotypicSummary] = []
    if order <= cap:
        for t in itertools.product(*(range(x) for x in d)):
            z = [Fraction(ti, di) for ti, di in zip(t, d)]
            q = tuple(sum(v_inv[j, i] * z[i] for i in range(n)) for j in range(n))
            j = sum(1 for x in q if x.denominator != 1)
            summaries.append(IsotypicSummary(t, q, j, component_dims(n, m, j)))
    else:
        for j, count in sorted(_strata_counts(d, v_inv).items()):
            summaries.append(IsotypicSummary(None, None, j, component_dims(n, m, j), count))
    entries: dict[tuple[int, int], int] = {}
    for s in summaries:
        for k, h in s.dims.items():
            key = (k, k - s.j_size)
            entries[key] = entries.get(key, 0) + h * s.multiplicity
    return summaries, HodgeTable(n, m, entries)


def strata_counts(c: IntMatrix) -> dict[int, int]:
    """``{|J|: number of group elements}`` computed symbolically."""
    d, v_inv = _smith_data(c)
    return _strata_counts(d, v_inv)


def rank1_table(b: int) -> HodgeTable:
    """Table of ``(0; b)``: standard row ``(1, 1, 1)`` plus ``b - 1`` at ``(2, 1)``."""
    if b < 1:
        raise ValueError("b must be positive")
    return HodgeTable(1, 1, {(0, 0): 1, (1, 1): 1, (2, 2): 1, (2, 1): b - 1})


def total_betti(n: int, m: int, strata: dict[int, int]) -> list[int]:
    out = [0] * (n + m + 1)
    for j, count in strata.items():
        for k, h in component_dims(n, m, j).items():
            out[k] += count * h
    return out

