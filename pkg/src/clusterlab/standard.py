"""Standard cohomology: exterior forms in dlog coordinates on a cluster torus.

Write ``theta_i = dlog x_i`` for all ``n + m`` variables.  A standard
k-form on the initial torus is ``sum_I a_I theta_I`` over increasing
k-subsets ``I``.  It extends over the neighbouring torus in direction ``r``
iff, writing it as ``eta_1 + eta_2 ^ theta_r`` with ``eta_1, eta_2`` free of
``theta_r``, the form ``eta_2 ^ alpha_r`` vanishes, where
``alpha_r = sum_s B[s, r] theta_s``.

Sign convention: monomials use increasing index order, and
``theta_I ^ theta_J = (-1)^inv(I, J) theta_{I+J}`` where ``inv`` counts
pairs ``a in I, b in J`` with ``a > b``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterator, Mapping

import networkx as nx

from .cluster import ExtendedExchangeMatrix, quiver
from .errors import DimensionCap, NotConnected, PreconditionViolated
from .exactlinalg import IntMatrix, rational_kernel, rational_rank
from .hodge import PoincareSeries

__all__ = [
    "DEFAULT_CAP",
    "StandardForm",
    "wedge_sign",
    "residue_constraint",
    "satisfies_residue_constraints",
    "standard_dims",
    "standard_basis",
    "poincare_closed",
    "poincare_factored",
    "reduced_gsv_form",
    "principal_standard_basis",
]

DEFAULT_CAP = 16

Subset = tuple[int, ...]


def wedge_sign(a: Subset, b: Subset) -> int:
    """Sign of ``theta_a ^ theta_b`` relative to the sorted union; 0 if they overlap."""
    if set(a) & set(b):
        return 0
    inv = sum(1 for x in a for y in b if x > y)
    return -1 if inv % 2 else 1


@dataclass(frozen=True)
class StandardForm:
    """Homogeneous form ``sum_I coeffs[I] theta_I`` on ``nvars`` coordinates.

    Keys are increasing tuples of 0-based indices of length ``degree``.
    """

    nvars: int
    degree: int
    coeffs: Mapping[Subset, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for key, c in self.coeffs.items():
            key = tuple(key)
            if len(key) != self.degree or list(key) != sorted(set(key)):
                raise ValueError(f"bad monomial {key} for a degree {self.degree} form")
            if any(not 0 <= i < self.nvars for i in key):
                raise ValueError(f"index out of range in {key}")
            c = Fraction(c)
            if c:
                clean[key] = c
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def one(cls, nvars: int) -> StandardForm:
        return cls(nvars, 0, {(): 1})

    @classmethod
    def theta(cls, nvars: int, i: int) -> StandardForm:
        """``dlog x_i`` for the 1-based index ``i``."""
        return cls(nvars, 1, {(i - 1,): 1})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: StandardForm) -> StandardForm:
        if (self.nvars, self.degree) != (other.nvars, other.degree):
            if self.is_zero():
                return other
            if other.is_zero():
                return self
            raise ValueError("cannot add forms of different degree")
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return StandardForm(self.nvars, self.degree, out)

    def scale(self, c) -> StandardForm:
        return StandardForm(self.nvars, self.degree, {k: c * v for k, v in self.coeffs.items()})

    def __neg__(self) -> StandardForm:
        return self.scale(-1)

    def wedge(self, other: StandardForm) -> StandardForm:
        out: dict[Subset, Fraction] = {}
        for a, ca in self.coeffs.items():
            for b, cb in other.coeffs.items():
                s = wedge_sign(a, b)
                if s:
                    key = tuple(sorted(a + b))
                    out[key] = out.get(key, 0) + s * ca * cb
        return StandardForm(self.nvars, self.degree + other.degree, out)

    __xor__ = wedge

    def power(self, j: int) -> StandardForm:
        out = StandardForm.one(self.nvars)
        for _ in range(j):
            out = out.wedge(self)
        return out

    def split(self, r: int) -> tuple[StandardForm, StandardForm]:
        """``(eta_1, eta_2)`` with ``self = eta_1 + eta_2 ^ theta_r`` (0-based ``r``)."""
        one, two = {}, {}
        for key, c in self.coeffs.items():
            if r in key:
                pos = key.index(r)
                rest = key[:pos] + key[pos + 1:]
                two[rest] = c if (self.degree - 1 - pos) % 2 == 0 else -c
            else:
                one[key] = c
        return (
            StandardForm(self.nvars, self.degree, one),
            StandardForm(self.nvars, self.degree - 1, two),
        )


def _alpha(b: ExtendedExchangeMatrix, r: int) -> StandardForm:
    N = b.n + b.m
    return StandardForm(N, 1, {(s,): b.mat[s, r] for s in range(N)})


def residue_constraint(form: StandardForm, b: ExtendedExchangeMatrix, r: int) -> StandardForm:
    """``eta_2 ^ alpha_r`` for the 1-based mutable index ``r``; zero iff the form extends."""
    _, eta2 = form.split(r - 1)
    return eta2.wedge(_alpha(b, r - 1))


def satisfies_residue_constraints(form: StandardForm, b: ExtendedExchangeMatrix) -> bool:
    return all(residue_constraint(form, b, r).is_zero() for r in range(1, b.n + 1))


def _check_cap(b: ExtendedExchangeMatrix, cap: int) -> None:
    if b.n + b.m > cap:
        raise DimensionCap(f"n+m = {b.n + b.m} exceeds the cap {cap}")


def _constraint_rows(b: ExtendedExchangeMatrix, k: int) -> Iterator[dict[int, int]]:
    """One sparse row per (mutable r, (k)-subset K) of the linear map ``a -> eta_2 ^ alpha_r``."""
    N = b.n + b.m
    index = {s: i for i, s in enumerate(combinations(range(N), k))}
    for r in range(b.n):
        col = [b.mat[s, r] for s in range(N)]
        rows: dict[Subset, dict[int, int]] = {}
        for subset, idx in index.items():
            if r not in subset:
                continue
            pos = subset.index(r)
            rest = subset[:pos] + subset[pos + 1:]
            sign = 1 if (k - 1 - pos) % 2 == 0 else -1
            for s in range(N):
                if not col[s] or s in rest:
                    continue
                target = tuple(sorted(rest + (s,)))
                coef = sign * wedge_sign(rest, (s,)) * col[s]
                row = rows.setdefault(target, {})
                row[idx] = row.get(idx, 0) + coef
        yield from rows.values()


def standard_dims(b: ExtendedExchangeMatrix, cap: int = DEFAULT_CAP) -> list[tuple[int, int]]:
    """``[(k, dim)]`` for ``k = 0..n+m``: dimensions of the spaces of standard forms."""
    _check_cap(b, cap)
    N = b.n + b.m
    return [(k, comb(N, k) - rational_rank(_constraint_rows(b, k))) for k in range(N + 1)]


def standard_basis(b: ExtendedExchangeMatrix, k: int, cap: int = DEFAULT_CAP) -> list[StandardForm]:
    """A basis of the standard k-forms (the kernel of the residue constraints)."""
    _check_cap(b, cap)
    N = b.n + b.m
    subsets = list(combinations(range(N), k))
    kernel = rational_kernel(_constraint_rows(b, k), len(subsets))
    return [StandardForm(N, k, dict(zip(subsets, vec))) for vec in kernel]


def _components(b: ExtendedExchangeMatrix) -> list[set[int]]:
    g = nx.Graph()
    g.add_nodes_from(range(1, b.n + 1))
    g.add_edges_from(quiver(b).edges)
    return [set(c) for c in nx.connected_components(g)]


def _polymul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def poincare_closed(b: ExtendedExchangeMatrix) -> PoincareSeries:
    """``(1+t)^(m-r) * prod_i (1 + t + ... + t^(n_i+1))`` over the r components of the graph."""
    comps = _components(b)
    poly = [1]
    for c in comps:
        poly = _polymul(poly, [1] * (len(c) + 2))
    shift = b.m - len(comps)
    for _ in range(max(shift, 0)):
        poly = _polymul(poly, [1, 1])
    for _ in range(max(-shift, 0)):
        # synthetic division by (1 + t)
        quot = []
        acc = 0
        for c in reversed(poly):
            acc = c - acc
            quot.append(acc)
        if quot[-1] != 0:
            raise PreconditionViolated("closed form is not a polynomial; the matrix cannot be full rank")
        poly = list(reversed(quot[:-1]))
    return PoincareSeries(tuple(poly))


def _geometric(top: int) -> str:
    if top == 1:
        return "(1+t)"
    if top == 2:
        return "(1+t+t^2)"
    return f"(1+t+...+t^{top})"


def poincare_factored(b: ExtendedExchangeMatrix) -> str:
    """The closed form of :func:`poincare_closed` as an unexpanded product."""
    sizes = sorted(len(c) for c in _components(b))
    shift = b.m - len(sizes)
    parts = [_geometric(s + 1) for s in sizes]
    if shift > 0:
        parts.insert(0, "(1+t)" if shift == 1 else f"(1+t)^{shift}")
    text = "".join(parts) or "1"
    if shift < 0:
        text += " / (1+t)" if shift == -1 else f" / (1+t)^{-shift}"
    return text


def reduced_gsv_form(b: IntMatrix) -> StandardForm:
    """``sum_{i,j} B_ij theta_i ^ theta_j - 2 sum_i theta_i ^ eta_i`` for principal coefficients.

    This is the GSV form of ``(B; Id)`` with its ``eta ^ eta`` terms dropped;
    ``eta_i`` is the coordinate ``n + i``.
    """
    n = b.rows
    coeffs: dict[Subset, Fraction] = {}
    for i in range(n):
        for j in range(i + 1, n):
            if b[i, j]:
                coeffs[(i, j)] = Fraction(2 * b[i, j])
        coeffs[(i, n + i)] = Fraction(-2)
    return StandardForm(2 * n, 2, coeffs)


def principal_standard_basis(b: IntMatrix | ExtendedExchangeMatrix) -> list[StandardForm]:
    """Forms ``gamma^j ^ eta_I`` with ``j + |I| <= n``, sorted by degree ``2j + |I|``.

    ``b`` is the principal part; the coefficients are taken principal.
    """
    if isinstance(b, ExtendedExchangeMatrix):
        b = b.principal
    n = b.rows
    principal = ExtendedExchangeMatrix(n, n, IntMatrix.block([[b], [IntMatrix.identity(n)]]) if n else IntMatrix.zeros(0, 0))
    if n and len(_components(principal)) != 1:
        raise NotConnected("principal standard basis needs a connected quiver")
    gamma = reduced_gsv_form(b)
    N = 2 * n
    out = []
    for j in range(n + 1):
        gj = gamma.power(j)
        for size in range(n - j + 1):
            for subset in combinations(range(n), size):
                eta = StandardForm(N, size, {tuple(n + i for i in subset): 1})
                out.append(gj.wedge(eta))
    out.sort(key=lambda f: f.degree)
    return out
