"""Dependency graphs: borders, cuts, closed neighbourhoods, sparse sets.

Vertex sets are handled internally as integer bitmasks over the graph's
lexicographic vertex order (bit ``i`` is ``graph.vertices[i]``).  The public
functions take and return ``frozenset`` of names; the ``*_mask`` variants are
what the hot loops in :mod:`fundep.derivation` use.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator

from fundep.errors import GraphFormatError, InvalidVertexError, NoValidCutError

NAME_RE = re.compile(r"[a-z0-9_]+\Z")


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """Finite simple undirected graph.

    ``vertices`` is stored sorted; ``edges`` as a frozenset of ``(u, v)`` with
    ``u < v``.  Loops, duplicate edges and dangling endpoints are rejected.
    """

    vertices: tuple[str, ...]
    edges: frozenset[tuple[str, str]]

    def __init__(self, vertices: Iterable[str], edges: Iterable[Iterable[str]] = ()):
        names = list(vertices)
        for name in names:
            if not isinstance(name, str) or not NAME_RE.match(name):
                raise GraphFormatError(f"bad vertex name {name!r}: expected [a-z0-9_]+")
        if len(set(names)) != len(names):
            raise GraphFormatError("duplicate vertex names")
        known = set(names)
        seen = set()
        for edge in edges:
            pair = tuple(edge)
            if len(pair) != 2:
                raise GraphFormatError(f"edge {pair!r} does not have two endpoints")
            u, v = pair
            for end in pair:
                if end not in known:
                    raise InvalidVertexError(end, "edge endpoint")
            if u == v:
                raise GraphFormatError(f"loop at {u!r}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise GraphFormatError(f"duplicate edge {u}-{v}")
            seen.add(key)
        object.__setattr__(self, "vertices", tuple(sorted(names)))
        object.__setattr__(self, "edges", frozenset(seen))

    def __repr__(self):
        es = ", ".join(f"{u}-{v}" for u, v in sorted(self.edges))
        return f"Graph([{', '.join(self.vertices)}]; {es})"

    @property
    def n(self) -> int:
        return len(self.vertices)

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def adj_mask(self) -> tuple[int, ...]:
        adj = [0] * self.n
        for u, v in self.edges:
            i, j = self.index[u], self.index[v]
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return tuple(adj)

    def check_vertex(self, v: str) -> int:
        try:
            return self.index[v]
        except (KeyError, TypeError):
            raise InvalidVertexError(v) from None

    def mask(self, names: Iterable[str]) -> int:
        m = 0
        for name in names:
            m |= 1 << self.check_vertex(name)
        return m

    def names(self, mask: int) -> frozenset[str]:
        return frozenset(self.vertices[i] for i in bits(mask))

    def sorted_names(self, mask: int) -> tuple[str, ...]:
        return tuple(self.vertices[i] for i in bits(mask))

    def neighbors(self, v: str) -> frozenset[str]:
        return self.names(self.adj_mask[self.check_vertex(v)])

    def has_edge(self, u: str, v: str) -> bool:
        return ((u, v) if u < v else (v, u)) in self.edges

    @cached_property
    def cut_border_table(self) -> tuple[int, ...]:
        """``B(U) | B(V \\ U)`` for every ``U`` mask, indexed by the mask."""
        full = self.full_mask
        return tuple(
            border_mask(self, u) | border_mask(self, full & ~u) for u in range(1 << self.n)
        )


def complete_graph(names: Iterable[str]) -> Graph:
    names = list(names)
    return Graph(names, combinations(names, 2))


def path_graph(names: Iterable[str]) -> Graph:
    names = list(names)
    return Graph(names, zip(names, names[1:]))


@dataclass(frozen=True)
class Cut:
    u: frozenset[str]
    w: frozenset[str]

    def __str__(self):
        return f"({','.join(sorted(self.u))}|{','.join(sorted(self.w))})"


def border_mask(g: Graph, u: int) -> int:
    out = 0
    outside = g.full_mask & ~u
    adj = g.adj_mask
    for i in bits(u):
        if adj[i] & outside:
            out |= 1 << i
    return out


def border(g: Graph, u: Iterable[str]) -> frozenset[str]:
    """Members of ``u`` with at least one neighbour outside ``u``."""
    return g.names(border_mask(g, g.mask(u)))


def adj_plus_mask(g: Graph, i: int) -> int:
    return g.adj_mask[i] | (1 << i)


def adj_plus(g: Graph, v: str) -> frozenset[str]:
    """Closed neighbourhood: the neighbours of ``v`` together with ``v``."""
    return g.names(adj_plus_mask(g, g.check_vertex(v)))


def cut_masks(g: Graph, a: int = 0, c: int = 0) -> Iterator[int]:
    """U-masks of every cut with ``a`` inside U and ``c`` inside W.

    Free vertices are enumerated as a counter, so U-masks come out ascending.
    """
    if a & c:
        raise NoValidCutError("constraint sets overlap; a cut's halves are disjoint")
    free = g.full_mask & ~(a | c)
    sub = 0
    while True:
        yield a | sub
        if sub == free:
            return
        # next subset of `free` in ascending order
        sub = (sub - free) & free


def enumerate_cuts(g: Graph, constraint_a: Iterable[str] = (), constraint_c: Iterable[str] = ()) -> Iterator[Cut]:
    a, c = g.mask(constraint_a), g.mask(constraint_c)
    for u in cut_masks(g, a, c):
        yield Cut(g.names(u), g.names(g.full_mask & ~u))


def equiv_class_masks(g: Graph, s: int) -> list[int]:
    """Classes of the relation "joined by a path with no two consecutive vertices in s".

    A walk has that property iff each of its edges has an endpoint outside
    ``s``, so the classes are the connected components of ``g`` with the edges
    inside ``s`` deleted.
    """
    n = g.n
    adj = [a & ~(s if (s >> i) & 1 else 0) for i, a in enumerate(g.adj_mask)]
    seen = 0
    classes = []
    for i in range(n):
        if (seen >> i) & 1:
            continue
        comp = 1 << i
        frontier = comp
        while frontier:
            nxt = 0
            for j in bits(frontier):
                nxt |= adj[j]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        classes.append(comp)
    return classes


def equiv_classes(g: Graph, s: Iterable[str]) -> list[frozenset[str]]:
    """Partition of the vertices; classes ordered by their first vertex."""
    return [g.names(m) for m in equiv_class_masks(g, g.mask(s))]


def distances_from(g: Graph, v: str) -> dict[str, int]:
    start = g.check_vertex(v)
    dist = {start: 0}
    queue = deque([start])
    while queue:
        i = queue.popleft()
        for j in bits(g.adj_mask[i]):
            if j not in dist:
                dist[j] = dist[i] + 1
                queue.append(j)
    return {g.vertices[i]: d for i, d in dist.items()}


def is_sparse(g: Graph, w: Iterable[str]) -> bool:
    """True iff every two distinct members of ``w`` are at distance >= 3."""
    members = sorted(g.names(g.mask(w)))
    for x, y in combinations(members, 2):
        d = distances_from(g, x).get(y)
        if d is not None and d < 3:
            return False
    return True
