"""Small named graphs used as fixtures and CLI builtins."""

from __future__ import annotations

import re
from itertools import combinations

from .graph import Graph


def complete(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def path(n: int) -> Graph:
    """Path on ``n`` vertices."""
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def star(k: int) -> Graph:
    return complete_bipartite(1, k)


def circulant(n: int, jumps) -> Graph:
    return Graph.from_edges(n, ((i, (i + j) % n) for i in range(n) for j in jumps))


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def cube() -> Graph:
    return Graph.from_edges(8, ((u, u ^ (1 << b)) for u in range(8) for b in range(3)))


def prism() -> Graph:
    return Graph.from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])


def octahedron() -> Graph:
    # K6 minus a perfect matching {0-1, 2-3, 4-5}
    return Graph.from_edges(6, ((u, v) for u, v in combinations(range(6), 2) if u // 2 != v // 2))


def add_apex(g: Graph) -> Graph:
    """``g`` plus one new vertex adjacent to every old vertex."""
    return Graph.from_edges(g.n + 1, g.edges() + [(v, g.n) for v in range(g.n)])


def cube_apex() -> Graph:
    return add_apex(cube())


_FIXED = {
    "petersen": petersen,
    "cube": cube,
    "prism": prism,
    "octahedron": octahedron,
    "cube_apex": cube_apex,
    "cube+apex": cube_apex,
}


def by_name(name: str) -> Graph:
    """Resolve a builtin name such as ``k5``, ``k_5``, ``c6``, ``k3,3``, ``p4`` or ``petersen``."""
    key = name.strip().lower()
    if key in _FIXED:
        return _FIXED[key]()
    m = re.fullmatch(r"k_?\{?(\d+),(\d+)\}?", key)
    if m:
        return complete_bipartite(int(m.group(1)), int(m.group(2)))
    m = re.fullmatch(r"([kcp])_?(\d+)", key)
    if m:
        kind, size = m.group(1), int(m.group(2))
        return {"k": complete, "c": cycle, "p": path}[kind](size)
    m = re.fullmatch(r"c_?(\d+)\((\d+(?:,\d+)*)\)", key)
    if m:
        return circulant(int(m.group(1)), [int(x) for x in m.group(2).split(",")])
    raise KeyError(f"unknown graph name {name!r}")
