"""Finite fields ``F_q`` with ``q = p^a`` and small ``a``.

Elements are the integers ``0..q-1``; the base-``p`` digits of an element
are its coefficients in ``F_p[x] / (modulus)``, lowest degree first.
Multiplication goes through discrete log tables.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from ..errors import NotPrime, PreconditionViolated

__all__ = [
    "MAX_DEGREE",
    "FiniteField",
    "make_field",
    "is_prime",
    "prime_power",
    "prime_factors",
    "is_prime_power",
    "field_of_order",
]

MAX_DEGREE = 4


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> dict[int, int]:
    """Factorization ``{p: e}`` of a positive integer by trial division."""
    out: dict[int, int] = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_power(q: int) -> tuple[int, int]:
    """``(p, a)`` with ``q = p^a``; raises ``NotPrime`` otherwise."""
    f = prime_factors(q) if q > 1 else {}
    if len(f) != 1:
        raise NotPrime(f"{q} is not a prime power")
    ((p, a),) = f.items()
    return p, a


def is_prime_power(q: int) -> bool:
    return q > 1 and len(prime_factors(q)) == 1


def _polymod(a: list[int], mod: list[int], p: int) -> list[int]:
    """Remainder of ``a`` by a monic ``mod`` over ``F_p`` (coefficients low to high)."""
    a = [x % p for x in a]
    dm = len(mod) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * mod[j]) % p
    return (a + [0] * dm)[:dm]


def _is_irreducible(mod: list[int], p: int) -> bool:
    deg = len(mod) - 1
    for d in range(1, deg // 2 + 1):
        for low in product(range(p), repeat=d):
            if not any(_polymod(mod, list(low) + [1], p)):
                return False
    return True


class FiniteField:
    """The field with ``p^a`` elements."""

    def __init__(self, p: int, a: int = 1, modulus: tuple[int, ...] | None = None):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if a < 1:
            raise ValueError("extension degree must be positive")
        self.p, self.a, self.q = p, a, p**a
        if modulus is None:
            modulus = _least_irreducible(p, a)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != a + 1 or modulus[-1] != 1 or not _is_irreducible(list(modulus), p):
            raise ValueError(f"{modulus} is not a monic irreducible polynomial of degree {a}")
        self.modulus = modulus
        self._build_tables()

    def _digits(self, x: int) -> list[int]:
        out = []
        for _ in range(self.a):
            x, r = divmod(x, self.p)
            out.append(r)
        return out

    def _from_digits(self, d: list[int]) -> int:
        x = 0
        for c in reversed(d):
            x = x * self.p + c
        return x

    def _slow_mul(self, x: int, y: int) -> int:
        dx, dy = self._digits(x), self._digits(y)
        prod_ = [0] * (2 * self.a - 1)
        for i, u in enumerate(dx):
            if u:
                for j, v in enumerate(dy):
                    prod_[i + j] += u * v
        return self._from_digits(_polymod(prod_, list(self.modulus), self.p))

    def _slow_pow(self, x: int, e: int) -> int:
        out = 1
        while e:
            if e & 1:
                out = self._slow_mul(out, x)
            x = self._slow_mul(x, x)
            e >>= 1
        return out

    def _build_tables(self) -> None:
        order = self.q - 1
        primes = list(prime_factors(order)) if order > 1 else []
        g = next(
            g
            for g in range(1, self.q)
            if all(self._slow_pow(g, order // r) != 1 for r in primes)
        )
        powers = [1]
        for _ in range(order - 1):
            powers.append(self._slow_mul(powers[-1], g))
        self.generator = g
        self._exp = powers
        self._log = [None] * self.q
        for e, x in enumerate(powers):
            self._log[x] = e

    @property
    def order(self) -> int:
        return self.q

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def elements(self) -> range:
        return range(self.q)

    def units(self) -> range:
        return range(1, self.q)

    def add(self, x: int, y: int) -> int:
        if self.a == 1:
            return (x + y) % self.p
        return self._from_digits([(u + v) % self.p for u, v in zip(self._digits(x), self._digits(y))])

    def neg(self, x: int) -> int:
        if self.a == 1:
            return -x % self.p
        return self._from_digits([-u % self.p for u in self._digits(x)])

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        return self._exp[(self._log[x] + self._log[y]) % (self.q - 1)]

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self._exp[-self._log[x] % (self.q - 1)]

    def pow(self, x: int, e: int) -> int:
        if x == 0:
            if e < 0:
                raise ZeroDivisionError("zero has no inverse")
            return 1 if e == 0 else 0
        return self._exp[(self._log[x] * e) % (self.q - 1)]

    def log(self, x: int) -> int:
        """Discrete log to base :attr:`generator`."""
        if x == 0:
            raise ValueError("log of zero")
        return self._log[x]

    def exp(self, e: int) -> int:
        return self._exp[e % (self.q - 1)]

    def from_int(self, n: int) -> int:
        """Image of an integer under ``Z -> F_q``."""
        return n % self.p

    def __repr__(self) -> str:
        return f"FiniteField(p={self.p}, a={self.a}, modulus={self.modulus})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FiniteField) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.modulus))


def _least_irreducible(p: int, a: int) -> tuple[int, ...]:
    """Least monic irreducible of degree ``a``, comparing coefficient lists from the top."""
    if a == 1:
        return (0, 1)
    for code in range(p**a):
        low = [(code // p**i) % p for i in range(a)]
        if _is_irreducible(low + [1], p):
            return tuple(low) + (1,)
    raise AssertionError("irreducible polynomials exist in every degree")


@lru_cache(maxsize=None)
def _cached_field(p: int, a: int) -> FiniteField:
    return FiniteField(p, a)


def make_field(p: int, a: int = 1, max_degree: int = MAX_DEGREE) -> FiniteField:
    """Deterministic ``F_{p^a}``; ``a`` is capped at ``max_degree``."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if not 1 <= a <= max_degree:
        raise PreconditionViolated(f"extension degree {a} outside 1..{max_degree}")
    return _cached_field(p, a)


def field_of_order(q: int, max_degree: int = MAX_DEGREE) -> FiniteField:
    p, a = prime_power(q)
    return make_field(p, a, max_degree)

