"""Extended exchange matrices, mutation, freezing and seeds.

Indices of mutable vertices are 1-based throughout the public API, so
``mutate_matrix(b, 1)`` mutates at the first column.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .exactlinalg import IntMatrix

__all__ = [
    "ExtendedExchangeMatrix",
    "Quiver",
    "LaurentFraction",
    "Seed",
    "ExactDivisionFailure",
    "NotLaurent",
    "mutate_matrix",
    "mutate_path",
    "freeze",
    "quiver",
    "initial_seed",
    "mutate_seed",
    "constant_term_check",
]


class ExactDivisionFailure(ArithmeticError):
    """A Laurent division left a nonzero remainder."""


class NotLaurent(ArithmeticError):
    """An element could not be written as a Laurent polynomial in some cluster."""


@dataclass(frozen=True)
class ExtendedExchangeMatrix:
    """An ``(n+m) x n`` integer matrix with skew-symmetric top block.

    ``labels`` records, for each row, the index of that variable in the
    matrix this one was derived from by freezing (1-based).  It plays no
    part in equality.
    """

    n: int
    m: int
    mat: IntMatrix
    labels: tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.mat.shape != (self.n + self.m, self.n):
            raise ValueError(
                f"expected a {self.n + self.m}x{self.n} matrix, got {self.mat.rows}x{self.mat.cols}"
            )
        if not self.principal.is_skew_symmetric():
            raise ValueError("principal part is not skew-symmetric")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(1, self.n + self.m + 1)))
        elif len(self.labels) != self.n + self.m:
            raise ValueError("one label per row required")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], n: int | None = None) -> ExtendedExchangeMatrix:
        """Build from rows; ``n`` defaults to the row length."""
        if n is None:
            if not rows:
                return cls(0, 0, IntMatrix.zeros(0, 0))
            n = len(rows[0])
        return cls(n, len(rows) - n, IntMatrix(rows, n))

    @classmethod
    def from_json(cls, data: Mapping) -> ExtendedExchangeMatrix:
        n, m, rows = int(data["n"]), int(data["m"]), data["rows"]
        if len(rows) != n + m:
            raise ValueError(f"expected {n + m} rows, got {len(rows)}")
        return cls(n, m, IntMatrix(rows, n))

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m, "rows": self.mat.tolist()}

    @property
    def principal(self) -> IntMatrix:
        return self.mat.submatrix(range(self.n), range(self.n))

    @property
    def frozen_part(self) -> IntMatrix:
        """The ``m x n`` block of frozen rows."""
        return self.mat.submatrix(range(self.n, self.n + self.m), range(self.n))

    def __getitem__(self, idx: tuple[int, int]) -> int:
        """1-based entry access ``b[i, j]``."""
        i, j = idx
        return self.mat[i - 1, j - 1]

    def __str__(self) -> str:
        return str(self.mat)


def mutate_matrix(b: ExtendedExchangeMatrix, k: int) -> ExtendedExchangeMatrix:
    """Matrix mutation in direction ``k`` (1-based)."""
    if not 1 <= k <= b.n:
        raise IndexError(f"mutation index {k} outside 1..{b.n}")
    k -= 1
    a = b.mat.tolist()
    col = [row[k] for row in a]
    rowk = a[k]
    out = []
    for i, row in enumerate(a):
        bik = col[i]
        if i == k:
            out.append([-x for x in row])
            continue
        new = []
        for j, bij in enumerate(row):
            if j == k:
                new.append(-bij)
            else:
                bkj = rowk[j]
                if bik > 0 and bkj > 0:
                    bij += bik * bkj
                elif bik < 0 and bkj < 0:
                    bij -= bik * bkj
                new.append(bij)
        out.append(new)
    return ExtendedExchangeMatrix(b.n, b.m, IntMatrix(out, b.n), b.labels)


def mutate_path(b: ExtendedExchangeMatrix, path: Iterable[int]) -> ExtendedExchangeMatrix:
    for k in path:
        b = mutate_matrix(b, k)
    return b


def freeze(b: ExtendedExchangeMatrix, s: Iterable[int]) -> ExtendedExchangeMatrix:
    """Keep the mutable indices in ``s`` and freeze the others.

    Columns outside ``s`` are dropped.  Rows are reordered: surviving
    mutable rows first (in increasing order), then the newly frozen rows,
    then the old frozen rows.  ``labels`` of the result give each row's
    original label.
    """
    keep = sorted(set(s))
    if any(not 1 <= i <= b.n for i in keep):
        raise IndexError("freeze set must lie in 1..n")
    gone = [i for i in range(1, b.n + 1) if i not in set(keep)]
    order = keep + gone + list(range(b.n + 1, b.n + b.m + 1))
    mat = b.mat.submatrix([i - 1 for i in order], [j - 1 for j in keep])
    labels = tuple(b.labels[i - 1] for i in order)
    return ExtendedExchangeMatrix(len(keep), b.m + len(gone), mat, labels)


@dataclass(frozen=True)
class Quiver:
    """Directed multigraph on vertices ``1..n``; ``edges[(i, j)]`` is the multiplicity."""

    n: int
    edges: Mapping[tuple[int, int], int]

    def __post_init__(self):
        for (i, j), w in self.edges.items():
            if i == j or w <= 0 or not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValueError(f"bad edge {i}->{j} of weight {w}")

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def edge_list(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def reversed(self) -> Quiver:
        return Quiver(self.n, {(j, i): w for (i, j), w in self.edges.items()})

    def is_edgeless(self) -> bool:
        return not self.edges

    def to_networkx(self):
        import networkx as nx

        g = nx.DiGraph()
        g.add_nodes_from(self.vertices)
        for (i, j), w in self.edges.items():
            g.add_edge(i, j, weight=w)
        return g

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Quiver):
            return NotImplemented
        return self.n == other.n and dict(self.edges) == dict(other.edges)

    def __hash__(self) -> int:
        return hash((self.n, tuple(sorted(self.edges.items()))))


def quiver(b: ExtendedExchangeMatrix) -> Quiver:
    """Edge ``i -> j`` of weight ``B[i, j]`` whenever it is positive."""
    edges = {}
    for i in range(b.n):
        for j in range(b.n):
            w = b.mat[i, j]
            if w > 0:
                edges[(i + 1, j + 1)] = w
    return Quiver(b.n, edges)


# --- Laurent polynomials ----------------------------------------------------

Monomial = tuple[int, ...]


def _add_term(terms: dict, e: Monomial, c: int) -> None:
    c += terms.get(e, 0)
    if c:
        terms[e] = c
    else:
        terms.pop(e, None)


def _glex_key(e: Monomial) -> tuple:
    return (sum(e), e)


class LaurentFraction:
    """Laurent polynomial over Z in a fixed number of variables.

    Stored as a map from integer exponent vectors (negative entries allowed)
    to nonzero coefficients.  :attr:`numerator` and :attr:`denominator` give
    the normalized ``polynomial / monomial`` form.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Monomial, int] | None = None):
        self.nvars = nvars
        self.terms: dict[Monomial, int] = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != nvars:
                raise ValueError("exponent vector length mismatch")
            if c:
                _add_term(self.terms, e, int(c))

    @classmethod
    def constant(cls, nvars: int, c: int) -> LaurentFraction:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> LaurentFraction:
        """The ``i``-th coordinate (1-based)."""
        return cls.monomial(nvars, tuple(int(j == i - 1) for j in range(nvars)))

    @classmethod
    def monomial(cls, nvars: int, e: Sequence[int], c: int = 1) -> LaurentFraction:
        return cls(nvars, {tuple(e): c})

    def is_zero(self) -> bool:
        return not self.terms

    def _shift(self) -> Monomial:
        if not self.terms:
            return (0,) * self.nvars
        return tuple(min(e[i] for e in self.terms) for i in range(self.nvars))

    @property
    def numerator(self) -> dict[Monomial, int]:
        """Polynomial part after clearing the monomial denominator."""
        d = self.denominator
        return {tuple(a + b for a, b in zip(e, d)): c for e, c in self.terms.items()}

    @property
    def denominator(self) -> Monomial:
        """Exponents of the monomial denominator (all nonnegative)."""
        return tuple(max(0, -x) for x in self._shift())

    def is_polynomial(self) -> bool:
        return all(x >= 0 for e in self.terms for x in e)

    def constant_term(self) -> int:
        return self.terms.get((0,) * self.nvars, 0)

    def __add__(self, other: LaurentFraction | int) -> LaurentFraction:
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            _add_term(out, e, c)
        return LaurentFraction(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> LaurentFraction:
        return LaurentFraction(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: LaurentFraction | int) -> LaurentFraction:
        return self + (-self._coerce(other))

    def __rsub__(self, other: int) -> LaurentFraction:
        return self._coerce(other) - self

    def __mul__(self, other: LaurentFraction | int) -> LaurentFraction:
        other = self._coerce(other)
        out: dict[Monomial, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                _add_term(out, tuple(a + b for a, b in zip(e1, e2)), c1 * c2)
        return LaurentFraction(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentFraction:
        if k < 0:
            if len(self.terms) != 1:
                raise ExactDivisionFailure("negative power of a non-monomial")
            (e, c), = self.terms.items()
            if abs(c) != 1:
                raise ExactDivisionFailure("negative power of a non-unit monomial")
            return LaurentFraction.monomial(self.nvars, [x * k for x in e], c ** (-k))
        out = LaurentFraction.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def exact_div(self, other: LaurentFraction) -> LaurentFraction:
        """Quotient in the Laurent ring; raises if ``other`` does not divide."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if self.is_zero():
            return LaurentFraction(self.nvars)
        sa, sb = self._shift(), other._shift()
        a = {tuple(x - y for x, y in zip(e, sa)): c for e, c in self.terms.items()}
        b = {tuple(x - y for x, y in zip(e, sb)): c for e, c in other.terms.items()}
        q = _poly_exact_div(a, b)
        offset = tuple(x - y for x, y in zip(sa, sb))
        return LaurentFraction(
            self.nvars, {tuple(x + y for x, y in zip(e, offset)): c for e, c in q.items()}
        )

    def __truediv__(self, other: LaurentFraction | int) -> LaurentFraction:
        return self.exact_div(self._coerce(other))

    def substitute(self, values: Sequence[LaurentFraction]) -> LaurentFraction:
        """Evaluate at Laurent polynomials, one per variable."""
        if len(values) != self.nvars:
            raise ValueError("one value per variable required")
        target = values[0].nvars if values else 0
        num = LaurentFraction(target)
        for e, c in self.numerator.items():
            term = LaurentFraction.constant(target, c)
            for v, x in zip(values, e):
                if x:
                    term = term * v ** x
            num = num + term
        den = LaurentFraction.constant(target, 1)
        for v, x in zip(values, self.denominator):
            if x:
                den = den * v ** x
        return num.exact_div(den)

    def _coerce(self, other) -> LaurentFraction:
        if isinstance(other, LaurentFraction):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        if isinstance(other, int):
            return LaurentFraction.constant(self.nvars, other)
        return NotImplemented

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentFraction.constant(self.nvars, other)
        if not isinstance(other, LaurentFraction):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"LaurentFraction({self.nvars}, {self.terms!r})"

    def __str__(self) -> str:
        return self.format()

    def format(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            names = [f"x{i + 1}" for i in range(self.nvars)]

        def mono(e):
            parts = []
            for name, x in zip(names, e):
                if x == 1:
                    parts.append(name)
                elif x:
                    parts.append(f"{name}^{x}")
            return "*".join(parts)

        def poly(terms):
            items = sorted(terms.items(), key=lambda t: _glex_key(t[0]), reverse=True)
            out = ""
            for e, c in items:
                m = mono(e)
                sign = "-" if c < 0 else "+"
                body = m if abs(c) == 1 and m else (f"{abs(c)}*{m}" if m else str(abs(c)))
                out += f" {sign} {body}" if out else (f"-{body}" if c < 0 else body)
            return out or "0"

        num = poly(self.numerator)
        den = mono(self.denominator)
        if not den:
            return num
        if len(self.terms) > 1:
            num = f"({num})"
        return f"{num}/({den})" if "*" in den else f"{num}/{den}"


def _poly_exact_div(a: dict[Monomial, int], b: dict[Monomial, int]) -> dict[Monomial, int]:
    """Exact division of polynomials in graded-lex order."""
    lead_b = max(b, key=_glex_key)
    cb = b[lead_b]
    rem = dict(a)
    quot: dict[Monomial, int] = {}
    while rem:
        lead = max(rem, key=_glex_key)
        c = rem[lead]
        shift = tuple(x - y for x, y in zip(lead, lead_b))
        if any(x < 0 for x in shift) or c % cb:
            raise ExactDivisionFailure("division leaves a remainder")
        qc = c // cb
        quot[shift] = qc
        for e, cc in b.items():
            _add_term(rem, tuple(x + y for x, y in zip(e, shift)), -qc * cc)
    return quot


# --- Seeds ------------------------------------------------------------------


@dataclass(frozen=True)
class Seed:
    """Exchange matrix plus cluster variables written in the initial cluster.

    ``path`` is the sequence of mutations leading here from the initial
    seed; :func:`constant_term_check` uses it to re-expand elements.
    """

    matrix: ExtendedExchangeMatrix
    cluster: tuple[LaurentFraction, ...]
    path: tuple[int, ...] = ()

    def __post_init__(self):
        if len(self.cluster) != self.matrix.n + self.matrix.m:
            raise ValueError("one cluster variable per row of the matrix required")

    @property
    def mutable(self) -> tuple[LaurentFraction, ...]:
        return self.cluster[: self.matrix.n]

    @property
    def frozen(self) -> tuple[LaurentFraction, ...]:
        return self.cluster[self.matrix.n:]


def initial_seed(b: ExtendedExchangeMatrix) -> Seed:
    N = b.n + b.m
    return Seed(b, tuple(LaurentFraction.variable(N, i) for i in range(1, N + 1)))


def exchange_binomial(b: ExtendedExchangeMatrix, cluster: Sequence[LaurentFraction], k: int):
    """``prod x_i^[b_ik]+ + prod x_i^[-b_ik]+`` for the (1-based) column ``k``."""
    N = len(cluster)
    plus = LaurentFraction.constant(cluster[0].nvars if N else 0, 1)
    minus = plus
    for i in range(N):
        w = b.mat[i, k - 1]
        if w > 0:
            plus = plus * cluster[i] ** w
        elif w < 0:
            minus = minus * cluster[i] ** (-w)
    return plus + minus


def mutate_seed(t: Seed, k: int) -> Seed:
    """Seed mutation; the new variable is found by exact Laurent division."""
    if not 1 <= k <= t.matrix.n:
        raise IndexError(f"mutation index {k} outside 1..{t.matrix.n}")
    new = exchange_binomial(t.matrix, t.cluster, k).exact_div(t.cluster[k - 1])
    cluster = list(t.cluster)
    cluster[k - 1] = new
    return Seed(mutate_matrix(t.matrix, k), tuple(cluster), t.path + (k,))


def express_in_seed(f: LaurentFraction, t: Seed) -> LaurentFraction:
    """Rewrite ``f`` (in the initial cluster) in the cluster variables of ``t``.

    Walking back from ``t`` along its reversed path gives the initial
    variables as Laurent polynomials in the variables of ``t``.
    """
    s = initial_seed(t.matrix)
    for k in reversed(t.path):
        s = mutate_seed(s, k)
    try:
        return f.substitute(s.cluster)
    except ExactDivisionFailure as exc:
        raise NotLaurent(f"not a Laurent polynomial in the cluster reached by {t.path}") from exc


def constant_term_check(f: LaurentFraction, seeds: Sequence[Seed]) -> bool:
    """True iff ``f`` has the same constant term in every given cluster."""
    consts = {express_in_seed(f, t).constant_term() for t in seeds}
    return len(consts) <= 1
