"""Point counts of cluster varieties over finite fields.

An isolated variety with frozen block ``C`` (``m x n``) is presented by
``x_i x'_i = f_i(y)`` with ``f_i = prod y_j^[C_ji]_+ + prod y_j^[-C_ji]_+``
over the torus of frozen variables ``y``.  For each ``y`` the fibre has
``q - 1`` points per ``i`` when ``f_i(y) != 0`` and ``2q - 1`` otherwise.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import gcd, prod
from typing import Mapping, Sequence

from ..cluster import ExtendedExchangeMatrix, mutate_path, quiver
from ..errors import CertificateMismatch, PreconditionViolated
from ..exactlinalg import IntMatrix, invariant_factors, smith_normal_form, unimodular_inverse
from ..quivers import LouiseCertificate, is_acyclic, split_children, verify_certificate
from .fields import FiniteField, field_of_order, prime_power

__all__ = [
    "PointCountSample",
    "count_isolated",
    "rank1_count",
    "count_louise",
    "count_acyclic_stratified",
    "suspect_bound",
    "is_suspect",
    "default_threads",
]

ENUMERATION_LIMIT = 4096


@dataclass(frozen=True)
class PointCountSample:
    q: int
    count: int
    suspect: bool = False

    def __post_init__(self):
        if self.count < 0:
            raise ValueError("point counts are nonnegative")

    def to_json(self) -> dict:
        return {"q": self.q, "count": self.count, "suspect": self.suspect}

    @classmethod
    def from_json(cls, data: Mapping) -> PointCountSample:
        return cls(int(data["q"]), int(data["count"]), bool(data.get("suspect", False)))


def default_threads() -> int:
    """Worker count from ``CLUSTERLAB_THREADS`` (default 1)."""
    try:
        return max(1, int(os.environ.get("CLUSTERLAB_THREADS", "1")))
    except ValueError:
        return 1


def _as_field(field: FiniteField | int) -> FiniteField:
    return field if isinstance(field, FiniteField) else field_of_order(field)


def _as_matrix(c) -> IntMatrix:
    return c if isinstance(c, IntMatrix) else IntMatrix(c)


def _active(c: IntMatrix) -> list[int]:
    return [j for j in range(c.rows) if any(c.row(j))]


def _enumerate_chunk(F: FiniteField, exps, first_values, rest_count) -> int:
    """Sum of fibre sizes for all ``y`` whose first coordinate lies in ``first_values``."""
    q = F.q
    total = 0
    for y0 in first_values:
        for rest in itertools.product(F.units(), repeat=rest_count):
            y = (y0,) + rest
            weight = 1
            for plus, minus in exps:
                a = 1
                for j, e in plus:
                    a = F.mul(a, F.pow(y[j], e))
                b = 1
                for j, e in minus:
                    b = F.mul(b, F.pow(y[j], e))
                weight *= 2 * q - 1 if F.add(a, b) == 0 else q - 1
            total += weight
    return total


def _count_by_field(c: IntMatrix, F: FiniteField, threads: int) -> int:
    """Literal enumeration of the frozen torus with field arithmetic."""
    q = F.q
    active = _active(c)
    pos = {j: t for t, j in enumerate(active)}
    exps = []
    for i in range(c.cols):
        plus = [(pos[j], c[j, i]) for j in active if c[j, i] > 0]
        minus = [(pos[j], -c[j, i]) for j in active if c[j, i] < 0]
        exps.append((plus, minus))
    skipped = (q - 1) ** (c.rows - len(active))
    if not active:
        return skipped * _enumerate_chunk(F, exps, [None], 0) if c.cols else skipped
    units = list(F.units())
    chunks = [units[t::threads] for t in range(threads)] if threads > 1 else [units]
    args = [(F, exps, ch, len(active) - 1) for ch in chunks]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda a: _enumerate_chunk(*a), args))
    else:
        parts = [_enumerate_chunk(*a) for a in args]
    return skipped * sum(parts)


def _congruence_count(a: IntMatrix, rhs: int, modulus: int) -> int:
    """Number of ``e in (Z/N)^cols`` with ``a e = (rhs, ..., rhs) mod N``."""
    rows, cols = a.shape
    if rows == 0:
        return modulus**cols
    snf = smith_normal_form(a)
    b = unimodular_inverse(snf.u) @ IntMatrix([[rhs]] * rows, 1)
    diag = snf.diagonal
    count = modulus ** (cols - len(diag))
    for i in range(rows):
        d = diag[i] if i < len(diag) else 0
        g = gcd(d, modulus)
        if b[i, 0] % g:
            return 0
        if i < len(diag):
            count *= g
    return count


def _count_by_congruences(c: IntMatrix, q: int) -> int:
    """Expand the product of fibre sizes over subsets and count torus solutions.

    ``f_i(y) = 0`` iff ``y^(C_i) = -1``; in exponent coordinates that is a
    linear congruence mod ``q - 1`` with right side ``(q-1)/2`` (``0`` in
    characteristic 2).
    """
    n = c.cols
    active = _active(c)
    N = q - 1
    h = 0 if q % 2 == 0 else N // 2
    total = 0
    for size in range(n + 1):
        for S in itertools.combinations(range(n), size):
            a = IntMatrix([[c[j, i] for j in active] for i in S], len(active))
            total += (q - 1) ** (n - size) * q**size * _congruence_count(a, h, N)
    return total * (q - 1) ** (c.rows - len(active))


def count_isolated(c, field: FiniteField | int, method: str = "auto", threads: int | None = None) -> PointCountSample:
    """Number of points of the isolated variety with frozen block ``c`` over ``F_q``.

    ``method`` is ``"field"`` (enumerate the frozen torus), ``"congruence"``
    (subset expansion and Smith-form solution counts) or ``"auto"``.
    """
    c = _as_matrix(c)
    F = _as_field(field)
    if method == "auto":
        method = "congruence" if 2 ** c.cols <= ENUMERATION_LIMIT else "field"
    if method == "field":
        count = _count_by_field(c, F, threads or default_threads())
    elif method == "congruence":
        count = _count_by_congruences(c, F.q)
    else:
        raise ValueError(f"unknown method {method!r}")
    return PointCountSample(F.q, count)


def rank1_count(d: int, q: int) -> int:
    """``q^2 + (c-2) q + 1`` with ``c = gcd(q-1, 2d) - gcd(q-1, d)``.

    In characteristic 2 only ``d = 1`` is allowed, and then ``c = 1``.
    """
    p, _ = prime_power(q)
    if d < 0:
        raise PreconditionViolated("d must be nonnegative")
    if p == 2:
        if d != 1:
            raise PreconditionViolated("even q requires d = 1")
        c = 1
    else:
        c = gcd(q - 1, 2 * d) - gcd(q - 1, d)
    return q * q + (c - 2) * q + 1


def count_louise(
    b: ExtendedExchangeMatrix,
    cert: LouiseCertificate,
    field: FiniteField | int,
    verify: bool = True,
    threads: int | None = None,
) -> PointCountSample:
    """Count points by inclusion-exclusion along a Louise certificate.

    ``#A = #A_(no i) + #A_(no j) - #A_(no i, j)`` at each split; mutations do
    not change the variety, and leaves are isolated.
    """
    F = _as_field(field)
    if verify and not verify_certificate(b, cert):
        raise CertificateMismatch("certificate does not verify against the matrix")
    memo: dict[IntMatrix, int] = {}

    def walk(mat: ExtendedExchangeMatrix, node: LouiseCertificate) -> int:
        cur = mutate_path(mat, node.path)
        if node.is_leaf:
            c = cur.frozen_part
            if c not in memo:
                memo[c] = count_isolated(c, F, threads=threads).count
            return memo[c]
        u, v, w = split_children(cur, node.edge)
        cu, cv, cw = node.children
        return walk(u, cu) + walk(v, cv) - walk(w, cw)

    return PointCountSample(F.q, walk(b, cert))


def count_acyclic_stratified(b: ExtendedExchangeMatrix, field: FiniteField | int) -> int:
    """Independent count for an acyclic seed, stratified by which ``x_i`` vanish.

    With ``x_i x'_i = P_i(x, y)``: a point with ``x_i != 0`` fixes ``x'_i``;
    with ``x_i = 0`` it needs ``P_i = 0`` and leaves ``x'_i`` free.
    """
    if not is_acyclic(quiver(b)):
        raise PreconditionViolated("stratified count needs an acyclic quiver")
    F = _as_field(field)
    n, m = b.n, b.m
    q = F.q
    cols = [[b.mat[r, i] for r in range(n + m)] for i in range(n)]
    total = 0
    for y in itertools.product(F.units(), repeat=m):
        for x in itertools.product(F.elements(), repeat=n):
            point = x + y
            weight = 1
            for i in range(n):
                if x[i]:
                    continue
                a = bb = 1
                for r, e in enumerate(cols[i]):
                    if e > 0:
                        a = F.mul(a, F.pow(point[r], e))
                    elif e < 0:
                        bb = F.mul(bb, F.pow(point[r], -e))
                if F.add(a, bb):
                    weight = 0
                    break
                weight *= q
            total += weight
    return total


def suspect_bound(b: ExtendedExchangeMatrix | IntMatrix) -> int:
    """Primes at or below this bound are flagged as suspect for counting."""
    mat = b.mat if isinstance(b, ExtendedExchangeMatrix) else b
    factors = [x for x in invariant_factors(mat) if x]
    return max([2, mat.max_abs()] + factors)


def is_suspect(q: int, bound: int) -> bool:
    return prime_power(q)[0] <= bound
