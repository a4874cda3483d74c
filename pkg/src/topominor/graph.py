"""Immutable simple graphs and the exact connectivity primitives built on them.

Vertices are the integers ``0..n-1``.  Vertex sets are passed around either as
iterables of ints or as int bitmasks (bit ``v`` set means ``v`` is present);
helpers below convert between the two.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def members(mask: int) -> list[int]:
    """Sorted list of the vertices in a bitmask."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def popcount(mask: int) -> int:
    return mask.bit_count()


@dataclass(frozen=True)
class Graph:
    """A finite simple undirected graph.

    ``adj[v]`` is the strictly increasing tuple of neighbours of ``v``.  Build
    instances through :meth:`from_edges` (or :meth:`from_adjacency`), which
    normalise and validate; the raw constructor trusts its input.
    """

    n: int
    adj: tuple[tuple[int, ...], ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for e in edges:
            u, v = e
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u}-{v} out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs))

    @classmethod
    def from_adjacency(cls, adj: Sequence[Iterable[int]]) -> "Graph":
        n = len(adj)
        g = cls.from_edges(n, ((u, v) for u in range(n) for v in adj[u]))
        for u in range(n):
            if set(adj[u]) != set(g.adj[u]):
                raise ValueError("adjacency is not symmetric")
        return g

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, tuple(() for _ in range(n)))

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match n")

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    # -- basic queries -------------------------------------------------
    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(mask_of(a) for a in self.adj)

    @cached_property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adj)

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    @property
    def min_degree(self) -> int:
        return min(self.degrees, default=0)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return (self.masks[u] >> v) & 1 == 1

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v``, in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def is_regular(self, d: int | None = None) -> bool:
        degs = set(self.degrees)
        if not degs:
            return True
        if len(degs) != 1:
            return False
        return d is None or degs == {d}

    def check_invariants(self) -> None:
        for v, a in enumerate(self.adj):
            if v in a:
                raise AssertionError(f"loop at {v}")
            if any(a[i] >= a[i + 1] for i in range(len(a) - 1)):
                raise AssertionError(f"neighbours of {v} not strictly increasing")
            for w in a:
                if not 0 <= w < self.n or v not in self.adj[w]:
                    raise AssertionError(f"asymmetric edge {v}-{w}")

    # -- derived graphs ------------------------------------------------
    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", dict[int, int]]:
        """Induced subgraph on ``vertices``; returns it with the old->new map."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        edges = [(index[u], index[v]) for u, v in self.edges() if u in index and v in index]
        return Graph.from_edges(len(keep), edges), index

    def delete_vertices(self, vertices: Iterable[int]) -> tuple["Graph", dict[int, int]]:
        gone = set(vertices)
        return self.induced(v for v in range(self.n) if v not in gone)

    def add_edges(self, edges: Iterable[Sequence[int]]) -> "Graph":
        return Graph.from_edges(self.n, list(self.edges()) + [tuple(e) for e in edges])

    def remove_edges(self, edges: Iterable[Sequence[int]]) -> "Graph":
        gone = {tuple(sorted(e)) for e in edges}
        return Graph.from_edges(self.n, (e for e in self.edges() if e not in gone))

    def disjoint_union(self, other: "Graph") -> "Graph":
        shift = self.n
        return Graph.from_edges(
            self.n + other.n,
            self.edges() + [(u + shift, v + shift) for u, v in other.edges()],
        )

    def complement(self) -> "Graph":
        return Graph.from_edges(
            self.n, ((u, v) for u, v in combinations(range(self.n), 2) if not self.has_edge(u, v))
        )


# ---------------------------------------------------------------------------
# Traversal


def component_mask(g: Graph, start: int, allowed: int) -> int:
    """Vertices reachable from ``start`` inside the ``allowed`` mask."""
    masks = g.masks
    seen = 1 << start
    frontier = seen
    while frontier:
        low = frontier & -frontier
        frontier ^= low
        v = low.bit_length() - 1
        new = masks[v] & allowed & ~seen
        seen |= new
        frontier |= new
    return seen


def components(g: Graph, allowed: int | None = None) -> list[int]:
    """Connected components of ``g[allowed]`` as bitmasks, ordered by least vertex."""
    if allowed is None:
        allowed = g.full_mask
    out = []
    rest = allowed
    while rest:
        v = (rest & -rest).bit_length() - 1
        comp = component_mask(g, v, allowed)
        out.append(comp)
        rest &= ~comp
    return out


def is_connected(g: Graph, allowed: int | None = None) -> bool:
    if allowed is None:
        allowed = g.full_mask
    if allowed == 0:
        return True
    v = (allowed & -allowed).bit_length() - 1
    return component_mask(g, v, allowed) == allowed


# ---------------------------------------------------------------------------
# Flow-based connectivity


def _augment(graph: list[list[int]], cap: list[int], to: list[int], source: int, sink: int) -> bool:
    """One BFS augmenting step on a residual network stored as arc arrays."""
    parent_arc = {source: -1}
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for a in graph[x]:
            if cap[a] > 0:
                y = to[a]
                if y not in parent_arc:
                    parent_arc[y] = a
                    if y == sink:
                        while y != source:
                            a = parent_arc[y]
                            cap[a] -= 1
                            cap[a ^ 1] += 1
                            y = to[a ^ 1]
                        return True
                    queue.append(y)
    return False


class _Network:
    def __init__(self, nodes: int):
        self.graph: list[list[int]] = [[] for _ in range(nodes)]
        self.cap: list[int] = []
        self.to: list[int] = []

    def arc(self, x: int, y: int, c: int) -> None:
        self.graph[x].append(len(self.to))
        self.to.append(y)
        self.cap.append(c)
        self.graph[y].append(len(self.to))
        self.to.append(x)
        self.cap.append(0)

    def max_flow(self, s: int, t: int, cutoff: int | None) -> int:
        flow = 0
        while (cutoff is None or flow < cutoff) and _augment(self.graph, self.cap, self.to, s, t):
            flow += 1
        return flow


def local_vertex_connectivity(g: Graph, s: int, t: int, cutoff: int | None = None) -> int:
    """Maximum number of internally disjoint s-t paths.

    An edge ``st``, if present, counts as one of the paths.  ``cutoff`` stops
    the augmentation early once that many paths are found.
    """
    if s == t:
        raise ValueError("endpoints must differ")
    direct = 1 if g.has_edge(s, t) else 0
    if cutoff is not None and direct >= cutoff:
        return direct
    big = g.n + 1
    # node 2v = v_in, 2v+1 = v_out
    net = _Network(2 * g.n)
    for v in range(g.n):
        net.arc(2 * v, 2 * v + 1, big if v in (s, t) else 1)
    for u, v in g.edges():
        if {u, v} == {s, t}:
            continue
        net.arc(2 * u + 1, 2 * v, 1)
        net.arc(2 * v + 1, 2 * u, 1)
    rest = None if cutoff is None else cutoff - direct
    return direct + net.max_flow(2 * s + 1, 2 * t, rest)


def vertex_connectivity(g: Graph) -> int:
    """Exact vertex connectivity; ``n-1`` for complete graphs, 0 for n <= 1.

    Uses the Esfahanian-Hakimi pair selection: with ``v`` of minimum degree, a
    minimum separator either misses ``v`` (so it separates ``v`` from some
    non-neighbour) or contains it (so it separates two neighbours of ``v``).
    """
    n = g.n
    if n <= 1:
        return 0
    if g.m == n * (n - 1) // 2:
        return n - 1
    if not is_connected(g):
        return 0
    v = min(range(n), key=lambda x: (g.degree(x), x))
    best = g.degree(v)
    for w in range(n):
        if w != v and not g.has_edge(v, w):
            best = min(best, local_vertex_connectivity(g, v, w, cutoff=best))
            if best == 0:
                return 0
    nbrs = g.adj[v]
    for x, y in combinations(nbrs, 2):
        if not g.has_edge(x, y):
            best = min(best, local_vertex_connectivity(g, x, y, cutoff=best))
    return best


def local_edge_connectivity(g: Graph, s: int, t: int, cutoff: int | None = None) -> int:
    net = _Network(g.n)
    for u, v in g.edges():
        net.arc(u, v, 1)
        net.arc(v, u, 1)
    return net.max_flow(s, t, cutoff)


def edge_connectivity(g: Graph) -> int:
    """Exact edge connectivity: minimum s-t cut from vertex 0 to every other vertex."""
    if g.n <= 1:
        return 0
    best = g.min_degree
    for t in range(1, g.n):
        best = min(best, local_edge_connectivity(g, 0, t, cutoff=best))
        if best == 0:
            break
    return best


# ---------------------------------------------------------------------------
# Twins and contraction


def nonadjacent_twins(g: Graph) -> list[tuple[int, int]]:
    """All pairs ``(u, v)``, ``u < v``, of nonadjacent vertices with equal neighbourhoods."""
    by_nbhd: dict[tuple[int, ...], list[int]] = {}
    for v in range(g.n):
        by_nbhd.setdefault(g.adj[v], []).append(v)
    out = []
    for group in by_nbhd.values():
        out.extend(combinations(group, 2))
    return sorted(out)


def contract_matching(g: Graph, matching: Iterable[Sequence[int]]) -> Graph:
    """Contract every edge of a matching; loops and parallel edges are dropped.

    Each merged pair keeps the position of its smaller endpoint; the other
    vertices keep their relative order.
    """
    rep = list(range(g.n))
    used: set[int] = set()
    for e in matching:
        u, v = sorted(e)
        if not g.has_edge(u, v):
            raise ValueError(f"{u}-{v} is not an edge")
        if u in used or v in used:
            raise ValueError(f"matching edges overlap at {u}-{v}")
        used.update((u, v))
        rep[v] = u
    survivors = [v for v in range(g.n) if rep[v] == v]
    index = {v: i for i, v in enumerate(survivors)}
    edges = set()
    for u, v in g.edges():
        a, b = index[rep[u]], index[rep[v]]
        if a != b:
            edges.add((min(a, b), max(a, b)))
    return Graph.from_edges(len(survivors), edges)
