"""Dirichlet characters with exact cyclotomic values."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Sequence

from ..errors import NonIntegerSum, PreconditionViolated
from .fields import is_prime, prime_factors

__all__ = [
    "CyclotomicInt",
    "DirichletCharacter",
    "FrobeniusEigenvalue",
    "cyclotomic_polynomial",
    "dirichlet_group",
    "trivial_character",
    "dir_star",
    "x_multiset",
    "char_sum",
    "char_sum_star",
    "frobenius_rank1",
    "euler_phi",
]


def euler_phi(n: int) -> int:
    out = n
    for p in prime_factors(n):
        out = out // p * (p - 1)
    return out


def _polydivmod(a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    """Division by a monic integer polynomial (coefficients low to high)."""
    a = list(a)
    db = len(b) - 1
    q = [0] * max(len(a) - db, 1)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    return q, a[:db] if db else []


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of ``Phi_n`` from the constant term up."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _polydivmod(poly, list(cyclotomic_polynomial(d)))
            assert not any(rem)
    return tuple(poly)


class CyclotomicInt:
    """Element of ``Z[zeta_N]`` in the power basis ``1, zeta, ..., zeta^(phi(N)-1)``."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Sequence[int]):
        phi = cyclotomic_polynomial(order)
        deg = len(phi) - 1
        coeffs = list(coeffs)
        if len(coeffs) > deg:
            _, coeffs = _polydivmod(coeffs, list(phi))
        self.order = order
        self.coeffs = tuple(coeffs) + (0,) * (deg - len(coeffs))

    @classmethod
    def root(cls, order: int, e: int) -> CyclotomicInt:
        """``zeta_order^e``."""
        e %= order
        return cls(order, [0] * e + [1])

    @classmethod
    def from_exponent_counts(cls, order: int, counts: Sequence[int]) -> CyclotomicInt:
        """``sum_e counts[e] zeta^e``."""
        return cls(order, list(counts))

    @classmethod
    def integer(cls, n: int, order: int = 1) -> CyclotomicInt:
        return cls(order, [n])

    def lift(self, order: int) -> CyclotomicInt:
        """Same number written in ``Z[zeta_order]`` (``order`` a multiple of ours)."""
        if order % self.order:
            raise ValueError("can only lift to a multiple of the order")
        step = order // self.order
        out = [0] * (step * len(self.coeffs) or 1)
        for i, c in enumerate(self.coeffs):
            out[i * step] = c
        return CyclotomicInt(order, out)

    def _common(self, other: CyclotomicInt):
        if isinstance(other, int):
            other = CyclotomicInt.integer(other, self.order)
        L = lcm(self.order, other.order)
        return self.lift(L), other.lift(L), L

    def __add__(self, other) -> CyclotomicInt:
        a, b, L = self._common(other)
        return CyclotomicInt(L, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> CyclotomicInt:
        return CyclotomicInt(self.order, [-x for x in self.coeffs])

    def __sub__(self, other) -> CyclotomicInt:
        return self + (-other if isinstance(other, CyclotomicInt) else -other)

    def __mul__(self, other) -> CyclotomicInt:
        a, b, L = self._common(other)
        out = [0] * (len(a.coeffs) + len(b.coeffs))
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    out[i + j] += x * y
        return CyclotomicInt(L, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> CyclotomicInt:
        out = CyclotomicInt.integer(1, self.order)
        for _ in range(k):
            out = out * self
        return out

    def is_integer(self) -> bool:
        return not any(self.coeffs[1:])

    def __int__(self) -> int:
        if not self.is_integer():
            raise NonIntegerSum(f"{self} is not a rational integer")
        return self.coeffs[0]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.is_integer() and self.coeffs[0] == other
        if not isinstance(other, CyclotomicInt):
            return NotImplemented
        a, b, _ = self._common(other)
        return a.coeffs == b.coeffs

    def __hash__(self) -> int:
        if self.is_integer():
            return hash(self.coeffs[0])
        return hash((self.order, self.coeffs))

    def __repr__(self) -> str:
        terms = [f"{c}*z^{i}" if i else str(c) for i, c in enumerate(self.coeffs) if c]
        return f"CyclotomicInt[{self.order}]({' + '.join(terms) or '0'})"


def _unit_group(n: int) -> list[tuple[int, int, dict[int, int]]]:
    """Generators of ``(Z/n)^x`` as ``(generator mod n, order, log table)``.

    The group is a product of cyclic groups, one or two per prime power.
    Each log table maps a unit mod ``n`` to its exponent along that
    generator.
    """
    gens = []
    for p, e in prime_factors(n).items():
        pe = p**e
        rest = n // pe

        def crt(x):
            # x mod pe, 1 mod rest
            if rest == 1:
                return x % n
            t = ((x - 1) * pow(rest, -1, pe)) % pe
            return (1 + rest * t) % n

        if p == 2:
            if e == 1:
                continue
            if e == 2:
                gens.append((crt(3), 2, lambda a, pe=pe: 0 if a % 4 == 1 else 1))
                continue
            sign_log = lambda a: 0 if a % 4 == 1 else 1
            five = {}
            x = 1
            for k in range(pe // 4):
                five[x] = k
                x = x * 5 % pe
            gens.append((crt(pe - 1), 2, sign_log))
            gens.append(
                (crt(5), pe // 4, lambda a, pe=pe, five=five: five[a % pe if a % 4 == 1 else (-a) % pe])
            )
        else:
            order = pe - pe // p
            g = next(
                g for g in range(2, pe)
                if gcd(g, p) == 1 and all(pow(g, order // r, pe) != 1 for r in prime_factors(order))
            )
            table = {}
            x = 1
            for k in range(order):
                table[x] = k
                x = x * g % pe
            gens.append((crt(g), order, lambda a, pe=pe, table=table: table[a % pe]))
    return gens


@dataclass(frozen=True, eq=False)
class DirichletCharacter:
    """Character mod ``modulus`` with values ``zeta_order^exps[a]``; ``exps[a]`` is ``None`` off units."""

    modulus: int
    order: int
    exps: tuple[int | None, ...]

    def __post_init__(self):
        n = self.modulus
        if len(self.exps) != n:
            raise ValueError("one value per residue required")
        for a, e in enumerate(self.exps):
            if (e is None) != (gcd(a, n) != 1):
                raise ValueError(f"value at {a} must vanish exactly off the units")
        if self.exps[1 % n] % self.order != 0:
            raise ValueError("chi(1) must be 1")
        units = [a for a in range(n) if gcd(a, n) == 1]
        for a in units:
            for b in units:
                if (self.exps[a] + self.exps[b] - self.exps[a * b % n]) % self.order:
                    raise ValueError("character is not multiplicative")

    def exponent(self, a: int) -> Fraction | None:
        """``chi(a) = exp(2 pi i * exponent)``, or ``None`` when ``chi(a) = 0``."""
        e = self.exps[a % self.modulus]
        return None if e is None else Fraction(e, self.order)

    def __call__(self, a: int) -> CyclotomicInt:
        e = self.exps[a % self.modulus]
        if e is None:
            return CyclotomicInt.integer(0, self.order)
        return CyclotomicInt.root(self.order, e)

    def is_trivial(self) -> bool:
        return all(e is None or e % self.order == 0 for e in self.exps)

    def inverse(self) -> DirichletCharacter:
        return DirichletCharacter(
            self.modulus, self.order, tuple(None if e is None else -e % self.order for e in self.exps)
        )

    def _key(self):
        return (self.modulus, tuple(self.exponent(a) for a in range(self.modulus)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DirichletCharacter):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        kind = "trivial" if self.is_trivial() else "chi"
        vals = ", ".join(f"{a}:{self.exponent(a)}" for a in range(self.modulus) if self.exps[a] is not None)
        return f"<{kind} mod {self.modulus} [{vals}]>"


@lru_cache(maxsize=None)
def dirichlet_group(n: int) -> tuple[DirichletCharacter, ...]:
    """All ``phi(n)`` characters of modulus ``n``, trivial first."""
    if n < 1:
        raise ValueError("modulus must be positive")
    gens = _unit_group(n)
    order = lcm(1, *(s for _, s, _ in gens))
    logs = {a: [log(a) for _, _, log in gens] for a in range(n) if gcd(a, n) == 1}
    out = []
    for ks in itertools.product(*(range(s) for _, s, _ in gens)):
        exps = []
        for a in range(n):
            if a not in logs:
                exps.append(None)
            else:
                exps.append(sum(k * (order // s) * l for k, (_, s, _), l in zip(ks, gens, logs[a])) % order)
        out.append(DirichletCharacter(n, order, tuple(exps)))
    return tuple(out)


def trivial_character(n: int) -> DirichletCharacter:
    return dirichlet_group(n)[0]


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def dir_star(n: int) -> list[DirichletCharacter]:
    """Multiset union of ``Dir(d)`` over the divisors ``d`` of ``n``."""
    return [chi for d in _divisors(n) for chi in dirichlet_group(d)]


def x_multiset(d: int) -> list[DirichletCharacter]:
    """Union of ``Dir(c)`` over ``c | 2d`` with ``c`` not dividing ``d``, minus the trivial character mod ``2d``."""
    if d < 1:
        raise ValueError("d must be positive")
    out = [chi for c in _divisors(2 * d) if d % c for chi in dirichlet_group(c)]
    out.remove(trivial_character(2 * d))
    return out


def _exact_sum(chars: Sequence[DirichletCharacter], a: int) -> int:
    L = lcm(1, *(chi.order for chi in chars))
    counts = [0] * L
    for chi in chars:
        e = chi.exps[a % chi.modulus]
        if e is not None:
            counts[e * (L // chi.order) % L] += 1
    total = CyclotomicInt.from_exponent_counts(L, counts)
    if not total.is_integer():
        raise NonIntegerSum(f"character sum at {a} is not an integer: {total}")
    return total.coeffs[0]


def char_sum(d: int, q: int) -> int:
    """``sum_{chi in Dir(d)} chi(q)``: ``phi(d)`` when ``q = 1 mod d``, else 0."""
    return _exact_sum(dirichlet_group(d), q)


def char_sum_star(n: int, q: int) -> int:
    """``sum_{chi in Dir*(n)} chi(q)``, computed exactly; equals ``gcd(q-1, n)``."""
    return _exact_sum(dir_star(n), q)


@dataclass(frozen=True)
class FrobeniusEigenvalue:
    """The eigenvalue ``chi(p) p^power``."""

    character: DirichletCharacter
    power: int

    def value(self, p: int) -> CyclotomicInt:
        return self.character(p) * p**self.power


def frobenius_rank1(d: int, p: int) -> dict[int, list[FrobeniusEigenvalue]]:
    """Frobenius eigenvalues on ``H^0, H^1, H^2`` for the matrix ``(0; d)``."""
    if not is_prime(p):
        raise PreconditionViolated(f"{p} is not prime")
    if d != 1 and (p == 2 or d % p == 0):
        raise PreconditionViolated("p must be odd and prime to d unless d = 1")
    one = trivial_character(1)
    return {
        0: [FrobeniusEigenvalue(one, 0)],
        1: [FrobeniusEigenvalue(one, 1)],
        2: [FrobeniusEigenvalue(one, 2)] + [FrobeniusEigenvalue(chi, 1) for chi in x_multiset(d)],
    }
