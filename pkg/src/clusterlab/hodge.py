"""Mixed Hodge tables ``h^{k,(p,p)}`` and Poincare polynomials."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

__all__ = ["HodgeTable", "PoincareSeries", "curious_palindrome"]


@dataclass(frozen=True)
class PoincareSeries:
    """Polynomial in ``t`` with nonnegative integer coefficients (constant term first)."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coefficients)
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        if any(x < 0 for x in c):
            raise ValueError("Poincare coefficients must be nonnegative")
        object.__setattr__(self, "coefficients", tuple(c))

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coefficients):
            if not c:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms) or "0"

    def __call__(self, t: int) -> int:
        return sum(c * t**i for i, c in enumerate(self.coefficients))


@dataclass(frozen=True)
class HodgeTable:
    """Dimensions ``h[(k, p)] = dim H^{k,(p,p)}``; absent keys are zero."""

    n: int
    m: int
    entries: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (k, p), h in self.entries.items():
            k, p, h = int(k), int(p), int(h)
            if h < 0:
                raise ValueError(f"negative dimension at {(k, p)}")
            if h == 0:
                continue
            if not (0 <= k <= self.dim and (k + 1) // 2 <= p <= k):
                raise ValueError(f"entry {(k, p)} outside the allowed range")
            clean[(k, p)] = clean.get((k, p), 0) + h
        object.__setattr__(self, "entries", clean)

    @property
    def dim(self) -> int:
        return self.n + self.m

    def __getitem__(self, kp: tuple[int, int]) -> int:
        return self.entries.get(kp, 0)

    def row(self, s: int) -> list[int]:
        """Entries with ``k - p = s`` for ``k = 0..n+m``."""
        return [self[(k, k - s)] for k in range(self.dim + 1)]

    def standard_row(self) -> list[int]:
        return self.row(0)

    def betti(self) -> list[int]:
        out = [0] * (self.dim + 1)
        for (k, _), h in self.entries.items():
            out[k] += h
        return out

    def depth(self) -> int:
        """Largest ``k - p`` with a nonzero entry."""
        return max((k - p for k, p in self.entries), default=0)

    def signed_weight_polynomial(self) -> dict[int, int]:
        """``sum_k (-1)^(n+m-k) sum_p h[(k,p)] q^p`` as a map power -> coefficient."""
        out: dict[int, int] = {}
        for (k, p), h in self.entries.items():
            out[p] = out.get(p, 0) + (-1) ** (self.dim - k) * h
        return {w: c for w, c in sorted(out.items()) if c}

    def evaluate_count(self, q: int) -> int:
        return sum(c * q**w for w, c in self.signed_weight_polynomial().items())

    def kunneth(self, other: HodgeTable) -> HodgeTable:
        """Table of a product variety."""
        out: dict[tuple[int, int], int] = {}
        for (k1, p1), h1 in self.entries.items():
            for (k2, p2), h2 in other.entries.items():
                key = (k1 + k2, p1 + p2)
                out[key] = out.get(key, 0) + h1 * h2
        return HodgeTable(self.n + other.n, self.m + other.m, out)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "entries": [[k, p, h] for (k, p), h in sorted(self.entries.items())],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> HodgeTable:
        return cls(int(data["n"]), int(data["m"]), {(k, p): h for k, p, h in data["entries"]})

    @classmethod
    def from_rows(cls, n: int, m: int, rows: Iterable[Iterable[int | None]]) -> HodgeTable:
        """Build from rows indexed by ``k - p``; each row lists ``k = 0..n+m``."""
        entries = {}
        for s, row in enumerate(rows):
            for k, h in enumerate(row):
                if h:
                    entries[(k, k - s)] = h
        return cls(n, m, entries)

    def render(self) -> str:
        """Aligned text table: columns ``H^k``, rows ``k - p``; empty cells left blank."""
        e = self.dim
        header = [""] + [f"H^{k}" for k in range(e + 1)]
        lines = [header]
        for s in range(self.depth() + 1):
            label = "k-p=0" if s == 0 else str(s)
            cells = [label]
            for k in range(e + 1):
                p = k - s
                inside = (k + 1) // 2 <= p <= k
                cells.append(str(self[(k, p)]) if inside and (s == 0 or self[(k, p)]) else "")
            lines.append(cells)
        widths = [max(len(r[i]) for r in lines) for i in range(len(header))]
        return "\n".join(
            "  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() for r in lines
        )


def curious_palindrome(table: HodgeTable) -> bool:
    """Check ``h[(p+s, p)] == h[(e-p+s, e-p)]`` for all ``s, p`` (``e = n + m``)."""
    e = table.dim
    keys = set(table.entries)
    keys |= {(e - p + (k - p), e - p) for k, p in table.entries}
    for k, p in keys:
        s = k - p
        if table[(p + s, p)] != table[(e - p + s, e - p)]:
            return False
    return True
