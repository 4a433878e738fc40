"""Quasi-polynomial fits of point counts and Grothendieck-Lefschetz checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ..errors import NoFit
from ..hodge import HodgeTable
from .counting import PointCountSample

__all__ = [
    "QuasiPolynomial",
    "fit_quasi_polynomial",
    "GrothendieckReport",
    "grothendieck_consistency",
]


def _format_poly(coeffs: Sequence[int], var: str = "q") -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        body = mono if abs(c) == 1 and mono else (f"{abs(c)}*{mono}" if mono else str(abs(c)))
        if not terms:
            terms.append(f"-{body}" if c < 0 else body)
        else:
            terms.append(f"- {body}" if c < 0 else f"+ {body}")
    return " ".join(terms) or "0"


@dataclass(frozen=True)
class QuasiPolynomial:
    """Integer polynomials in ``q`` indexed by ``q mod modulus``.

    ``polys[r]`` lists coefficients from the constant term up.  Classes that
    no sample reached are absent.
    """

    modulus: int
    polys: Mapping[int, tuple[int, ...]] = field(default_factory=dict)

    def __call__(self, q: int) -> int:
        r = q % self.modulus
        if r not in self.polys:
            raise KeyError(f"no polynomial for residue {r} mod {self.modulus}")
        return sum(c * q**i for i, c in enumerate(self.polys[r]))

    def is_polynomial(self) -> bool:
        return self.modulus == 1

    def to_json(self) -> dict:
        return {"modulus": self.modulus, "polys": {str(r): list(c) for r, c in sorted(self.polys.items())}}

    @classmethod
    def from_json(cls, data: Mapping) -> QuasiPolynomial:
        return cls(int(data["modulus"]), {int(r): tuple(c) for r, c in data["polys"].items()})

    def __str__(self) -> str:
        if self.modulus == 1 and 0 in self.polys:
            return _format_poly(self.polys[0])
        return "\n".join(
            f"q = {r} mod {self.modulus}: {_format_poly(c)}" for r, c in sorted(self.polys.items())
        )


def _interpolate(points: Sequence[tuple[int, int]]) -> list[Fraction]:
    """Coefficients (constant first) of the Lagrange interpolant through ``points``."""
    n = len(points)
    out = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xj * basis[t + 1]
            denom *= xi - xj
        for t, c in enumerate(basis):
            out[t] += yi * c / denom
    return out


def _fit_class(samples: Sequence[PointCountSample], degree: int) -> tuple[int, ...] | None:
    pts = [(s.q, s.count) for s in samples]
    coeffs = _interpolate(pts[: degree + 1])
    if any(c.denominator != 1 for c in coeffs):
        return None
    poly = [int(c) for c in coeffs]
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    for q, count in pts[degree + 1:]:
        if sum(c * q**i for i, c in enumerate(poly)) != count:
            return None
    return tuple(poly)


def fit_quasi_polynomial(
    samples: Iterable[PointCountSample],
    max_modulus: int = 12,
    max_degree: int = 4,
    include_suspect: bool = False,
) -> QuasiPolynomial:
    """Smallest modulus ``N`` for which every residue class has an integer
    polynomial of degree at most ``max_degree`` through its samples.

    Each class is interpolated on its first ``max_degree + 1`` samples (by
    increasing ``q``) and must reproduce the rest, so every class needs at
    least ``max_degree + 2`` samples.  Suspect samples are ignored unless
    ``include_suspect`` is set.
    """
    by_q: dict[int, PointCountSample] = {}
    for s in samples:
        if s.suspect and not include_suspect:
            continue
        if s.q in by_q and by_q[s.q].count != s.count:
            raise NoFit(f"conflicting counts for q = {s.q}")
        by_q[s.q] = s
    usable = [by_q[q] for q in sorted(by_q)]
    if not usable:
        raise NoFit("no usable samples")
    for N in range(1, max_modulus + 1):
        classes: dict[int, list[PointCountSample]] = {}
        for s in usable:
            classes.setdefault(s.q % N, []).append(s)
        if any(len(v) < max_degree + 2 for v in classes.values()):
            continue
        polys = {}
        for r, members in classes.items():
            poly = _fit_class(members, max_degree)
            if poly is None:
                break
            polys[r] = poly
        else:
            return QuasiPolynomial(N, polys)
    raise NoFit(f"no quasi-polynomial of modulus <= {max_modulus} and degree <= {max_degree} fits")


@dataclass(frozen=True)
class GrothendieckReport:
    """Outcome of comparing a Hodge table with point counts."""

    checked: tuple[int, ...]
    mismatches: tuple[tuple[int, int, int], ...]  # (q, predicted, counted)

    @property
    def ok(self) -> bool:
        return bool(self.checked) and not self.mismatches

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        if not self.checked:
            return "no samples were checked"
        if self.ok:
            return f"consistent at q in {list(self.checked)}"
        return "\n".join(
            f"q={q}: table predicts {pred}, count is {got} (diff {got - pred})"
            for q, pred, got in self.mismatches
        )


def grothendieck_consistency(
    table: HodgeTable,
    samples: Iterable[PointCountSample],
    assume_trivial_characters: bool = True,
    character_modulus: int | None = None,
) -> GrothendieckReport:
    """Compare ``sum_k (-1)^(n+m-k) sum_p q^p h^{k,(p,p)}`` with sampled counts.

    With trivial characters every sample is checked.  Otherwise a
    ``character_modulus`` ``N`` is required and only samples with
    ``q = 1 mod N`` are checked: every character of modulus dividing ``N``
    is 1 there.
    """
    samples = list(samples)
    if not assume_trivial_characters:
        if character_modulus is None:
            raise ValueError("a character modulus is needed when characters may be nontrivial")
        samples = [s for s in samples if s.q % character_modulus == 1 % character_modulus]
    mismatches = []
    for s in samples:
        pred = table.evaluate_count(s.q)
        if pred != s.count:
            mismatches.append((s.q, pred, s.count))
    return GrothendieckReport(tuple(s.q for s in samples), tuple(mismatches))
