"""Separating edges, mutation-class search and Louise certificates."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from math import factorial, prod
from typing import Mapping, Union

import networkx as nx

from .cluster import ExtendedExchangeMatrix, Quiver, freeze, mutate_matrix, mutate_path, quiver

__all__ = [
    "DEFAULT_BUDGET",
    "Yes",
    "No",
    "Unknown",
    "SearchVerdict",
    "LouiseCertificate",
    "separating_edges",
    "is_acyclic",
    "canonical_key",
    "is_mutation_acyclic",
    "louise_certificate",
    "verify_certificate",
    "split_children",
]

DEFAULT_BUDGET = 10_000

# Above this many tie-breaking permutations the canonical key falls back to
# the raw matrix.  Dedup then merges fewer matrices but stays sound.
_PERMUTATION_CAP = 720


@dataclass(frozen=True)
class Yes:
    path: tuple[int, ...]


@dataclass(frozen=True)
class No:
    explored: int


@dataclass(frozen=True)
class Unknown:
    expansions: int


SearchVerdict = Union[Yes, No, Unknown]


def separating_edges(q: Quiver) -> set[tuple[int, int]]:
    """Edges through which no bi-infinite directed path passes.

    An edge ``i -> j`` lies on such a path exactly when ``i`` can be reached
    from a vertex on a directed cycle and ``j`` can reach one.
    """
    g = q.to_networkx()
    cyclic = set()
    for comp in nx.strongly_connected_components(g):
        if len(comp) > 1:
            cyclic |= comp
    downstream = set(cyclic)
    upstream = set(cyclic)
    for v in cyclic:
        downstream |= nx.descendants(g, v)
        upstream |= nx.ancestors(g, v)
    return {(i, j) for (i, j) in q.edges if not (i in downstream and j in upstream)}


def is_acyclic(q: Quiver) -> bool:
    return nx.is_directed_acyclic_graph(q.to_networkx())


def canonical_key(b: ExtendedExchangeMatrix) -> tuple:
    """Key shared by matrices that differ by relabelling mutable indices.

    Vertices are sorted by a permutation-invariant signature and the
    lexicographically least matrix over permutations within equal-signature
    cells is taken.  When there are too many such permutations the exact
    matrix is used instead, which never merges non-equivalent matrices.
    """
    n, mat = b.n, b.mat
    if n == 0:
        return (0, b.m, mat)
    rows = [mat.row(i) for i in range(n + b.m)]

    def signature(v):
        return (
            tuple(sorted(rows[v][:n])),
            tuple(rows[f][v] for f in range(n, n + b.m)),
        )

    sig = {v: signature(v) for v in range(n)}
    cells = [list(g) for _, g in itertools.groupby(sorted(range(n), key=sig.get), key=sig.get)]
    if prod(factorial(len(c)) for c in cells) > _PERMUTATION_CAP:
        return (n, b.m, mat)
    best = None
    for choice in itertools.product(*(itertools.permutations(c) for c in cells)):
        order = [v for part in choice for v in part]
        flat = tuple(rows[i][j] for i in order for j in order) + tuple(
            rows[f][j] for f in range(n, n + b.m) for j in order
        )
        if best is None or flat < best:
            best = flat
    return (n, b.m, best)


def _mutation_class_bfs(b: ExtendedExchangeMatrix, counter: list[int], budget: int):
    """Yield ``(matrix, path)`` pairs breadth-first, one per dedup class.

    ``counter[0]`` is incremented per expansion; iteration stops when it
    reaches ``budget``.  After a normal end the generator returns ``True``
    when the class was exhausted.
    """
    seen = {canonical_key(b)}
    queue = deque([(b, ())])
    while queue:
        if counter[0] >= budget:
            return False
        counter[0] += 1
        cur, path = queue.popleft()
        yield cur, path
        for k in range(1, cur.n + 1):
            if path and path[-1] == k:
                continue
            nxt = mutate_matrix(cur, k)
            key = canonical_key(nxt)
            if key not in seen:
                seen.add(key)
                queue.append((nxt, path + (k,)))
    return True


def is_mutation_acyclic(b: ExtendedExchangeMatrix, budget: int = DEFAULT_BUDGET) -> SearchVerdict:
    """Breadth-first search of the mutation class for an acyclic quiver."""
    if budget <= 0:
        raise ValueError("budget must be positive")
    counter = [0]
    gen = _mutation_class_bfs(b, counter, budget)
    while True:
        try:
            cur, path = next(gen)
        except StopIteration as stop:
            return No(counter[0]) if stop.value else Unknown(counter[0])
        if is_acyclic(quiver(cur)):
            return Yes(path)


@dataclass(frozen=True)
class LouiseCertificate:
    """Recursion tree witnessing the Louise property.

    A node first applies ``path`` to its input matrix.  A leaf then has an
    edgeless quiver; a split names a separating ``edge`` ``(i, j)`` and
    carries certificates for the freezings that delete ``i``, ``j`` and
    both, in that order.
    """

    path: tuple[int, ...] = ()
    edge: tuple[int, int] | None = None
    children: tuple[LouiseCertificate, ...] = ()

    @property
    def is_leaf(self) -> bool:
        return self.edge is None

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)

    def depth(self) -> int:
        return 1 + max((c.depth() for c in self.children), default=0)

    def to_json(self) -> dict:
        if self.is_leaf:
            return {"path": list(self.path), "leaf": True}
        return {
            "path": list(self.path),
            "edge": list(self.edge),
            "children": [c.to_json() for c in self.children],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> LouiseCertificate:
        path = tuple(int(k) for k in data.get("path", ()))
        if data.get("leaf"):
            return cls(path)
        edge = tuple(int(x) for x in data["edge"])
        children = tuple(cls.from_json(c) for c in data["children"])
        if len(edge) != 2 or len(children) != 3:
            raise ValueError("a split needs one edge and three children")
        return cls(path, edge, children)


def split_children(b: ExtendedExchangeMatrix, edge: tuple[int, int]) -> tuple[ExtendedExchangeMatrix, ...]:
    """Freezings of ``b`` removing ``i``, ``j`` and both from the mutable set."""
    i, j = edge
    full = set(range(1, b.n + 1))
    return (freeze(b, full - {i}), freeze(b, full - {j}), freeze(b, full - {i, j}))


def _edge_order(b: ExtendedExchangeMatrix, edges) -> list[tuple[int, int]]:
    # All three children have n-1 or n-2 mutable vertices whatever the edge,
    # so rank edges by how many quiver edges survive in the children instead.
    all_edges = list(quiver(b).edges)

    def cost(e):
        i, j = e
        return (sum((i not in f) + (j not in f) for f in all_edges), e)

    return sorted(edges, key=cost)


class _Search:
    def __init__(self, budget: int):
        self.budget = budget
        self.counter = [0]
        self.memo: dict[ExtendedExchangeMatrix, LouiseCertificate | None] = {}

    def run(self, b: ExtendedExchangeMatrix) -> LouiseCertificate | None:
        if b in self.memo:
            return self.memo[b]
        gen = _mutation_class_bfs(b, self.counter, self.budget)
        result = None
        exhausted = False
        while result is None:
            try:
                cur, path = next(gen)
            except StopIteration as stop:
                exhausted = bool(stop.value)
                break
            q = quiver(cur)
            if q.is_edgeless():
                result = LouiseCertificate(path)
                break
            for edge in _edge_order(cur, separating_edges(q)):
                kids = []
                for child in split_children(cur, edge):
                    c = self.run(child)
                    if c is None:
                        break
                    kids.append(c)
                if len(kids) == 3:
                    result = LouiseCertificate(path, edge, tuple(kids))
                    break
                if self.counter[0] >= self.budget:
                    break
        if result is not None or exhausted:
            self.memo[b] = result
        return result


def louise_certificate(
    b: ExtendedExchangeMatrix, budget: int = DEFAULT_BUDGET
) -> LouiseCertificate | Unknown:
    """Search for a Louise certificate, spending at most ``budget`` expansions."""
    if budget <= 0:
        raise ValueError("budget must be positive")
    search = _Search(budget)
    cert = search.run(b)
    return cert if cert is not None else Unknown(search.counter[0])


def verify_certificate(b: ExtendedExchangeMatrix, cert: LouiseCertificate) -> bool:
    """Replay a certificate and check every invariant."""
    try:
        cur = mutate_path(b, cert.path)
    except IndexError:
        return False
    q = quiver(cur)
    if cert.is_leaf:
        return q.is_edgeless() and not cert.children
    if len(cert.children) != 3 or tuple(cert.edge) not in separating_edges(q):
        return False
    return all(
        verify_certificate(child, c) for child, c in zip(split_children(cur, cert.edge), cert.children)
    )
