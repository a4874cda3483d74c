"""Slow, independent reference implementations used to cross-check the package.

Nothing here imports package algorithms beyond the Graph container.
"""

from functools import lru_cache
from itertools import combinations, product

import networkx as nx

from topominor.graph import Graph


def to_nx(g: Graph) -> nx.Graph:
    x = nx.Graph()
    x.add_nodes_from(range(g.n))
    x.add_edges_from(g.edges())
    return x


def from_nx(x: nx.Graph) -> Graph:
    nodes = sorted(x.nodes())
    index = {v: i for i, v in enumerate(nodes)}
    return Graph.from_edges(len(nodes), ((index[a], index[b]) for a, b in x.edges()))


@lru_cache(maxsize=1)
def _atlas():
    return tuple(nx.graph_atlas_g())


def atlas_graphs():
    """All graphs on 0..7 vertices, one per isomorphism class."""
    return _atlas()


def is_series_parallel(x: nx.Graph) -> bool:
    """K4-minor-free test by deleting vertices of degree <= 1 and suppressing degree-2 vertices."""
    x = nx.Graph(x)
    changed = True
    while changed:
        changed = False
        for v in list(x.nodes()):
            deg = x.degree(v)
            if deg <= 1:
                x.remove_node(v)
                changed = True
            elif deg == 2:
                a, b = list(x.neighbors(v))
                x.remove_node(v)
                x.add_edge(a, b)
                changed = True
    return x.number_of_nodes() == 0


def has_claw_minor(x: nx.Graph) -> bool:
    return any(d >= 3 for _, d in x.degree())


def has_c4_minor(x: nx.Graph) -> bool:
    """A cycle of length >= 4 exists iff some block has at least 4 vertices."""
    return any(len(b) >= 4 for b in nx.biconnected_components(x))


def brute_minor(g: Graph, h: Graph) -> bool:
    """Try every map V(G) -> V(H) ∪ {unused}; check connected, pairwise adjacent branch sets."""
    x = to_nx(g)
    hedges = h.edges()
    for colours in product(range(h.n + 1), repeat=g.n):
        sets = [[v for v in range(g.n) if colours[v] == i] for i in range(h.n)]
        if any(not s for s in sets):
            continue
        if any(not nx.is_connected(x.subgraph(s)) for s in sets):
            continue
        ok = True
        for a, b in hedges:
            if not any(x.has_edge(u, v) for u in sets[a] for v in sets[b]):
                ok = False
                break
        if ok:
            return True
    return False


def labelled_regular_count(n: int, d: int) -> int:
    """Number of labelled simple d-regular graphs on n vertices, by exhaustive edge choice."""
    pairs = list(combinations(range(n), 2))

    def rec(i: int, deg: list) -> int:
        if i == len(pairs):
            return int(all(x == d for x in deg))
        u, v = pairs[i]
        # vertex u has no later pair with a smaller partner; prune when it can no longer reach d
        total = 0
        if deg[u] < d and deg[v] < d:
            deg[u] += 1
            deg[v] += 1
            total += rec(i + 1, deg)
            deg[u] -= 1
            deg[v] -= 1
        if v == n - 1 and deg[u] < d:
            return total  # u's last chance passed without reaching d
        return total + rec(i + 1, deg)

    return rec(0, [0] * n)
