"""Exact integer and rational linear algebra.

Everything here works on Python ints, so entries never overflow.  The
central routine is :func:`smith_normal_form`, which also returns the
unimodular transforms; ranks, cokernels and lattice saturations are read
off from it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

__all__ = [
    "IntMatrix",
    "SnfDecomposition",
    "AbelianGroup",
    "smith_normal_form",
    "invariant_factors",
    "cokernel",
    "torsion_cokernel",
    "rank",
    "is_full_rank",
    "is_really_full_rank",
    "determinant",
    "unimodular_inverse",
    "rational_kernel",
    "rational_rank",
    "row_hermite_form",
    "same_row_span",
]


class IntMatrix:
    """Immutable integer matrix with an explicit shape.

    The shape is stored separately so that matrices with zero rows or zero
    columns keep their other dimension.
    """

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, data: Iterable[Iterable[int]], cols: int | None = None):
        rows = tuple(tuple(int(x) for x in row) for row in data)
        if cols is None:
            if not rows:
                raise ValueError("column count required for a matrix with no rows")
            cols = len(rows[0])
        for row in rows:
            if len(row) != cols:
                raise ValueError("ragged matrix rows")
        self.rows = len(rows)
        self.cols = cols
        self._data = rows
        self._hash = None

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def diagonal(cls, entries: Sequence[int]) -> IntMatrix:
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def block(cls, blocks: Sequence[Sequence[IntMatrix]]) -> IntMatrix:
        """Assemble a matrix from a grid of blocks."""
        out: list[list[int]] = []
        cols = sum(b.cols for b in blocks[0])
        for brow in blocks:
            height = brow[0].rows
            if any(b.rows != height for b in brow) or sum(b.cols for b in brow) != cols:
                raise ValueError("incompatible block shapes")
            for i in range(height):
                line: list[int] = []
                for b in brow:
                    line.extend(b._data[i])
                out.append(line)
        return cls(out, cols)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"entry {idx} outside a {self.rows}x{self.cols} matrix")
        return self._data[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self._data[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._data]

    def transpose(self) -> IntMatrix:
        return IntMatrix([self.column(j) for j in range(self.cols)], self.rows)

    T = property(transpose)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> IntMatrix:
        return IntMatrix([[self._data[i][j] for j in cols] for i in rows], len(cols))

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ocols = [other.column(j) for j in range(other.cols)]
        return IntMatrix(
            [[sum(a * b for a, b in zip(r, c)) for c in ocols] for r in self._data],
            other.cols,
        )

    def __add__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)], self.cols
        )

    def __neg__(self) -> IntMatrix:
        return IntMatrix([[-a for a in r] for r in self._data], self.cols)

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        return self + (-other)

    def scale(self, c: int) -> IntMatrix:
        return IntMatrix([[c * a for a in r] for r in self._data], self.cols)

    def is_zero(self) -> bool:
        return all(a == 0 for r in self._data for a in r)

    def is_skew_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self._data[i][j] == -self._data[j][i]
            for i in range(self.rows)
            for j in range(i, self.cols)
        )

    def max_abs(self) -> int:
        return max((abs(a) for r in self._data for a in r), default=0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._data))
        return self._hash

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()!r}, cols={self.cols})"

    def __str__(self) -> str:
        if not self.rows or not self.cols:
            return f"<{self.rows}x{self.cols} matrix>"
        width = max(len(str(a)) for r in self._data for a in r)
        return "\n".join(" ".join(str(a).rjust(width) for a in r) for r in self._data)


@dataclass(frozen=True)
class SnfDecomposition:
    """``u @ d @ v`` equals the decomposed matrix."""

    u: IntMatrix
    d: IntMatrix
    v: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.d[i, i] for i in range(min(self.d.shape)))


@dataclass(frozen=True)
class AbelianGroup:
    """``Z^free_rank`` plus cyclic factors of the listed orders."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        t = tuple(self.torsion)
        if any(x <= 1 for x in t) or any(b % a for a, b in zip(t, t[1:])):
            raise ValueError(f"torsion {t} is not a divisibility chain of factors > 1")
        object.__setattr__(self, "torsion", t)

    @property
    def order(self) -> int | None:
        """Group order, or ``None`` when infinite."""
        if self.free_rank:
            return None
        out = 1
        for t in self.torsion:
            out *= t
        return out

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) or "0"


def smith_normal_form(m: IntMatrix) -> SnfDecomposition:
    """Smith normal form with unimodular transforms.

    Returns ``(u, d, v)`` with ``u @ d @ v == m``; ``d`` is diagonal with
    nonnegative entries, each dividing the next.  The pivot is always a
    nonzero entry of least absolute value in the remaining block, which
    keeps intermediate entries small.
    """
    r, c = m.shape
    a = m.tolist()
    u = [[int(i == j) for j in range(r)] for i in range(r)]
    v = [[int(i == j) for j in range(c)] for i in range(c)]

    # Row op "row_i += q*row_j" on a is undone on u by "col_j -= q*col_i";
    # column ops on a are undone on v by the dual row op.
    def add_row(i, j, q):
        ai, aj = a[i], a[j]
        for t in range(c):
            ai[t] += q * aj[t]
        for row in u:
            row[j] -= q * row[i]

    def add_col(i, j, q):
        for row in a:
            row[i] += q * row[j]
        vi, vj = v[i], v[j]
        for t in range(c):
            vj[t] -= q * vi[t]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        for row in u:
            row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        v[i], v[j] = v[j], v[i]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        for row in u:
            row[i] = -row[i]

    for t in range(min(r, c)):
        while True:
            best = None
            for i in range(t, r):
                for j in range(t, c):
                    x = a[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
                        if best[0] == 1:
                            break
                if best is not None and best[0] == 1:
                    break
            if best is None:
                break
            _, i, j = best
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            p = a[t][t]
            clean = True
            for i in range(t + 1, r):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    clean = clean and a[i][t] == 0
            for j in range(t + 1, c):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    clean = clean and a[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, r) if any(a[i][j] % p for j in range(t + 1, c))),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if best is None:
            break
        if a[t][t] < 0:
            negate_row(t)

    return SnfDecomposition(IntMatrix(u, r), IntMatrix(a, c), IntMatrix(v, c))


def invariant_factors(m: IntMatrix) -> tuple[int, ...]:
    """Diagonal of the Smith form, length ``min(rows, cols)``."""
    return smith_normal_form(m).diagonal


def rank(m: IntMatrix) -> int:
    return sum(1 for x in invariant_factors(m) if x)


def is_full_rank(b: IntMatrix) -> bool:
    return rank(b) == b.cols


def is_really_full_rank(b: IntMatrix) -> bool:
    """True iff the rows of ``b`` span ``Z^cols`` over the integers."""
    f = invariant_factors(b)
    return b.rows >= b.cols and all(x == 1 for x in f)


def cokernel(b: IntMatrix) -> AbelianGroup:
    """Structure of ``Z^rows / b Z^cols``."""
    f = invariant_factors(b)
    nonzero = [x for x in f if x]
    return AbelianGroup(b.rows - len(nonzero), tuple(x for x in nonzero if x > 1))


def torsion_cokernel(b: IntMatrix) -> AbelianGroup:
    """Saturation quotient ``(b Q^cols  ∩  Z^rows) / b Z^cols``."""
    return AbelianGroup(0, cokernel(b).torsion)


def determinant(m: IntMatrix) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    n = m.rows
    if m.cols != n:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    a = m.tolist()
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ai, ak = a[i], a[k]
            for j in range(k + 1, n):
                ai[j] = (ai[j] * akk - aik * ak[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def unimodular_inverse(m: IntMatrix) -> IntMatrix:
    """Inverse of a square integer matrix with determinant ±1."""
    n = m.rows
    if m.cols != n:
        raise ValueError("inverse of a non-square matrix")
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m.tolist())]
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        a[k], a[piv] = a[piv], a[k]
        inv = 1 / a[k][k]
        a[k] = [x * inv for x in a[k]]
        for i in range(n):
            if i != k and a[i][k]:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    out = [[x for x in row[n:]] for row in a]
    if any(x.denominator != 1 for row in out for x in row):
        raise ValueError("matrix is not unimodular")
    return IntMatrix([[int(x) for x in row] for row in out], n)


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for x in row.values():
        g = gcd(g, x)
    lead = row[min(row)]
    if lead < 0:
        g = -g
    return {j: x // g for j, x in row.items()}


def _echelon(rows: Iterable[dict[int, int]]) -> dict[int, dict[int, int]]:
    """Fraction-free echelon basis of the row space, keyed by pivot column."""
    basis: dict[int, dict[int, int]] = {}
    for row in rows:
        row = {j: x for j, x in row.items() if x}
        while row:
            piv = min(row)
            if piv not in basis:
                basis[piv] = _primitive(row)
                break
            b = basis[piv]
            x, y = row[piv], b[piv]
            g = gcd(x, y)
            fa, fb = y // g, x // g
            new = {j: fa * val for j, val in row.items()}
            for j, val in b.items():
                w = new.get(j, 0) - fb * val
                if w:
                    new[j] = w
                else:
                    new.pop(j, None)
            row = _primitive(new) if new else new
    return basis


def rational_rank(rows: Iterable[dict[int, int]]) -> int:
    """Rank over Q of sparse integer rows (dicts column -> value)."""
    return len(_echelon(rows))


def rational_kernel(rows: Iterable[dict[int, int]], ncols: int) -> list[list[Fraction]]:
    """Basis of ``{x in Q^ncols : row . x = 0 for all rows}``.

    Rows are sparse dicts mapping column index to an integer.  The basis is
    the standard one attached to the reduced row echelon form: one vector
    per free column.
    """
    basis = _echelon(rows)
    pivots = sorted(basis)
    reduced: dict[int, dict[int, Fraction]] = {}
    for p in reversed(pivots):
        b = basis[p]
        row = {j: Fraction(x, b[p]) for j, x in b.items()}
        for q in [j for j in row if j != p and j in reduced]:
            f = row.pop(q)
            for j, val in reduced[q].items():
                if j == q:
                    continue
                w = row.get(j, 0) - f * val
                if w:
                    row[j] = w
                else:
                    row.pop(j, None)
        reduced[p] = row
    free = [j for j in range(ncols) if j not in reduced]
    out = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for p, row in reduced.items():
            if f in row:
                vec[p] = -row[f]
        out.append(vec)
    return out


def row_hermite_form(m: IntMatrix) -> IntMatrix:
    """Canonical generators of the row lattice (nonzero rows of the HNF)."""
    a = [list(r) for r in m.tolist()]
    out: list[list[int]] = []
    col = 0
    while a and col < m.cols:
        a = [r for r in a if any(r)]
        nz = [r for r in a if r[col]]
        if not nz:
            col += 1
            continue
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            p = nz[0]
            for r in nz[1:]:
                q = r[col] // p[col]
                for t in range(m.cols):
                    r[t] -= q * p[t]
            nz = [r for r in nz if r[col]]
        p = nz[0]
        if p[col] < 0:
            p[:] = [-x for x in p]
        for r in out:
            q = r[col] // p[col]
            for t in range(m.cols):
                r[t] -= q * p[t]
        out.append(p)
        a = [r for r in a if r is not p]
        col += 1
    return IntMatrix(out, m.cols)


def same_row_span(a: IntMatrix, b: IntMatrix) -> bool:
    """True iff the rows of ``a`` and ``b`` generate the same lattice."""
    if a.cols != b.cols:
        return False
    return row_hermite_form(a) == row_hermite_form(b)
