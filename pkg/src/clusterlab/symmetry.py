"""Character groups of the torus action, covering matrices and GSV forms."""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import lcm

from .cluster import ExtendedExchangeMatrix, mutate_matrix
from .errors import CompletionFailed, NotFullRank, OddDimension, PreconditionViolated
from .exactlinalg import (
    AbelianGroup,
    IntMatrix,
    cokernel,
    determinant,
    is_full_rank,
    smith_normal_form,
    torsion_cokernel,
    unimodular_inverse,
)

__all__ = [
    "CoverMatrix",
    "GsvMatrix",
    "aut_characters",
    "locally_constant_characters",
    "cover_degree",
    "build_cover",
    "mutate_cover",
    "complete_gsv",
    "gsv_pullback",
]

MAX_ATTEMPTS = 10_000


def aut_characters(b: ExtendedExchangeMatrix) -> AbelianGroup:
    return cokernel(b.mat)


def locally_constant_characters(b: ExtendedExchangeMatrix) -> AbelianGroup:
    return torsion_cokernel(b.mat)


def cover_degree(b: ExtendedExchangeMatrix) -> int:
    """Least ``d`` with ``d Z^n`` inside the row lattice of ``b``."""
    snf = smith_normal_form(b.mat)
    factors = snf.diagonal
    if len(factors) < b.n or any(x == 0 for x in factors):
        raise NotFullRank("cover degree needs a full rank matrix")
    return lcm(1, *factors)


@dataclass(frozen=True)
class CoverMatrix:
    """Square matrix ``(Id_n 0; P Q)``."""

    n: int
    r: IntMatrix

    def __post_init__(self):
        n, N = self.n, self.r.rows
        if self.r.cols != N or N < n:
            raise ValueError("cover matrix must be square of size at least n")
        for i in range(n):
            if any(self.r[i, j] != int(i == j) for j in range(N)):
                raise ValueError("top block rows must be (Id_n 0)")

    @property
    def p(self) -> IntMatrix:
        N = self.r.rows
        return self.r.submatrix(range(self.n, N), range(self.n))

    @property
    def q(self) -> IntMatrix:
        N = self.r.rows
        return self.r.submatrix(range(self.n, N), range(self.n, N))


def _target(b: ExtendedExchangeMatrix, d: int) -> IntMatrix:
    """``(B; d Id_n; 0)``."""
    rows = b.principal.tolist()
    rows += [[d * int(i == j) for j in range(b.n)] for i in range(b.n)]
    rows += [[0] * b.n for _ in range(b.m - b.n)]
    return IntMatrix(rows, b.n)


def build_cover(b: ExtendedExchangeMatrix, d: int | None = None, seed: int = 0) -> CoverMatrix:
    """Matrix ``R`` with ``R b = (B; d Id_n; 0)`` and ``det R != 0``.

    From the Smith form ``b = U D V`` one gets ``U'`` with
    ``U' b = (d Id_n; 0)``.  Rows ``(P Q) = W U'`` with ``W`` of shape
    ``(Id_n X; 0 Y)`` then satisfy the identity for any ``X, Y``; these are
    drawn from a seeded generator until ``Q`` is invertible.
    """
    n, m = b.n, b.m
    if m < n:
        raise PreconditionViolated("a cover needs at least as many frozen as mutable rows")
    base = cover_degree(b)
    if d is None:
        d = base
    if d <= 0 or d % base:
        raise PreconditionViolated(f"d={d} is not a positive multiple of the cover degree {base}")
    N = n + m
    target = _target(b, d)
    if n == 0 or b.mat == target:
        return CoverMatrix(n, IntMatrix.identity(N))
    snf = smith_normal_form(b.mat)
    u_inv = unimodular_inverse(snf.u)
    v_inv = unimodular_inverse(snf.v)
    scale = IntMatrix.diagonal([d // x for x in snf.diagonal] + [1] * m)
    left = IntMatrix.block([[v_inv, IntMatrix.zeros(n, m)], [IntMatrix.zeros(m, n), IntMatrix.identity(m)]])
    u_prime = left @ scale @ u_inv
    assert u_prime @ b.mat == _target_lower(n, m, d)

    rng = random.Random(seed)
    for attempt in range(MAX_ATTEMPTS):
        spread = 0 if attempt == 0 else 1 + attempt // 50
        w = []
        for i in range(m):
            row = [int(i == j) if i < n else 0 for j in range(n)]
            row += [rng.randint(-spread, spread) for _ in range(m)]
            w.append(row)
        pq = IntMatrix(w, N) @ u_prime
        r = IntMatrix.block([[IntMatrix.identity(n), IntMatrix.zeros(n, m)], [pq]])
        cover = CoverMatrix(n, r)
        if determinant(cover.q) != 0:
            if r @ b.mat != target:
                raise AssertionError("cover construction violated R b = (B; d Id; 0)")
            return cover
    raise CompletionFailed("no invertible Q found")


def _target_lower(n: int, m: int, d: int) -> IntMatrix:
    return IntMatrix([[d * int(i == j) for j in range(n)] for i in range(n + m)], n)


def mutate_cover(r: CoverMatrix, b: ExtendedExchangeMatrix, k: int) -> CoverMatrix:
    """Mutate ``R`` in direction ``k`` along with ``b``.

    Only column ``k`` of the rows below ``n`` changes:
    ``R'_ik = -R_ik - [C_ik]_+ + sum_l R_il [B_lk]_+`` with ``C = R b``.
    """
    if not 1 <= k <= b.n:
        raise IndexError(f"mutation index {k} outside 1..{b.n}")
    if r.r.rows != b.n + b.m or r.n != b.n:
        raise ValueError("cover matrix and exchange matrix shapes disagree")
    c = r.r @ b.mat
    k0 = k - 1
    rows = r.r.tolist()
    col = b.mat.column(k0)
    for i in range(b.n, b.n + b.m):
        acc = sum(rows[i][l] * max(col[l], 0) for l in range(b.n + b.m))
        rows[i][k0] = -rows[i][k0] - max(c[i, k0], 0) + acc
    return CoverMatrix(b.n, IntMatrix(rows, b.n + b.m))


@dataclass(frozen=True)
class GsvMatrix:
    """Skew-symmetric coefficient matrix of a GSV form."""

    bhat: IntMatrix

    def __post_init__(self):
        if not self.bhat.is_skew_symmetric():
            raise ValueError("GSV matrix must be skew-symmetric")

    def extends(self, b: ExtendedExchangeMatrix) -> bool:
        N = b.n + b.m
        return self.bhat.shape == (N, N) and all(
            self.bhat[i, j] == b.mat[i, j] for i in range(N) for j in range(b.n)
        )

    def determinant(self) -> int:
        return determinant(self.bhat)


def _skew_completion(b: ExtendedExchangeMatrix, lower: dict[tuple[int, int], int]) -> IntMatrix:
    n, N = b.n, b.n + b.m
    a = [[0] * N for _ in range(N)]
    for i in range(N):
        for j in range(n):
            a[i][j] = b.mat[i, j]
            a[j][i] = -b.mat[i, j]
    for (i, j), x in lower.items():
        a[i][j] = x
        a[j][i] = -x
    return IntMatrix(a, N)


def complete_gsv(b: ExtendedExchangeMatrix, seed: int = 0) -> GsvMatrix:
    """Skew-symmetric ``N x N`` extension of ``b`` with nonzero determinant.

    The free entries are the strictly lower part of the frozen-by-frozen
    block.  The zero block and the standard symplectic block are tried
    first, then seeded random blocks with slowly growing entries.
    """
    n, m = b.n, b.m
    if (n + m) % 2:
        raise OddDimension("full rank GSV forms need n+m even")
    if not is_full_rank(b.mat):
        raise NotFullRank("GSV completion needs a full rank matrix")
    free = [(i, j) for i in range(n, n + m) for j in range(n, i)]
    candidates = [{}, {(n + 2 * t + 1, n + 2 * t): 1 for t in range(m // 2)}]
    rng = random.Random(seed)
    for attempt in range(MAX_ATTEMPTS):
        if attempt < len(candidates):
            lower = candidates[attempt]
        else:
            spread = 1 + attempt // 100
            lower = {pos: rng.randint(-spread, spread) for pos in free}
        bhat = _skew_completion(b, lower)
        if determinant(bhat) != 0:
            return GsvMatrix(bhat)
    raise CompletionFailed(f"no nonsingular completion in {MAX_ATTEMPTS} attempts")


def gsv_pullback(bhat: GsvMatrix, r: CoverMatrix) -> GsvMatrix:
    """``R Bhat R^T``."""
    if bhat.bhat.shape != r.r.shape:
        raise ValueError("shape mismatch between GSV matrix and cover matrix")
    return GsvMatrix(r.r @ bhat.bhat @ r.r.T)

