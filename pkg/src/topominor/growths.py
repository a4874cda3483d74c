"""k-growths: twin duplication (first kind) and bounded-degree uncontraction (second kind).

``G`` is a k-growth of ``J`` when ``J`` comes back out of ``G`` either by deleting
one vertex from each of k disjoint nonadjacent twin pairs, or by contracting a
k-edge matching whose endpoints all have degree at most ``d``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable

from .errors import Budget
from .graph import Graph, contract_matching

FIRST = "first"
SECOND = "second"
KINDS = (FIRST, SECOND)


@dataclass(frozen=True)
class GrowthStep:
    kind: str
    pairs: tuple[tuple[int, int], ...]
    d: int | None = None

    @property
    def k(self) -> int:
        return len(self.pairs)

    def to_json(self) -> dict:
        return {"kind": self.kind, "pairs": [list(p) for p in self.pairs], "d": self.d}

    @classmethod
    def from_json(cls, data: dict) -> "GrowthStep":
        return cls(data["kind"], tuple(tuple(p) for p in data["pairs"]), data.get("d"))


def validate_step(g: Graph, step: GrowthStep) -> None:
    if step.kind not in KINDS:
        raise ValueError(f"unknown growth kind {step.kind!r}")
    seen: set[int] = set()
    for u, v in step.pairs:
        for x in (u, v):
            if not 0 <= x < g.n:
                raise ValueError(f"vertex {x} out of range")
            if x in seen:
                raise ValueError(f"vertex {x} used twice")
            seen.add(x)
        if step.kind == FIRST:
            if g.has_edge(u, v) or g.masks[u] != g.masks[v]:
                raise ValueError(f"{u},{v} are not nonadjacent twins")
        else:
            if step.d is None:
                raise ValueError("second-kind step needs a degree cap d")
            if not g.has_edge(u, v):
                raise ValueError(f"{u}-{v} is not an edge")
            if g.degree(u) > step.d or g.degree(v) > step.d:
                raise ValueError(f"{u}-{v} has an endpoint of degree above {step.d}")


def apply_reduction(g: Graph, step: GrowthStep) -> Graph:
    """Undo a growth step: delete the ``v_i`` (first kind) or contract the ``u_i v_i`` (second kind)."""
    validate_step(g, step)
    if step.kind == FIRST:
        j, _ = g.delete_vertices(v for _, v in step.pairs)
        return j
    return contract_matching(g, step.pairs)


def low_degree_set(g: Graph, d: int) -> list[int]:
    """Vertices of degree <= d with a partner of degree <= d that is adjacent or a nonadjacent twin."""
    low = [v for v in range(g.n) if g.degree(v) <= d]
    low_mask = sum(1 << v for v in low)
    out = []
    for v in low:
        if g.masks[v] & low_mask:
            out.append(v)
        elif any(u != v and g.masks[u] == g.masks[v] for u in low):
            out.append(v)
    return out


def find_reduction(g: Graph, d: int) -> GrowthStep | None:
    """Split the low-degree set S into S1 (no neighbour in S) and S2 (the rest).

    S1 is paired greedily into nonadjacent twins and S2 gets a greedy matching;
    the larger of the two steps wins, ties going to the first kind.  Returns
    None when S is empty.
    """
    s = low_degree_set(g, d)
    if not s:
        return None
    s_mask = sum(1 << v for v in s)
    s2 = [v for v in s if g.masks[v] & s_mask]
    s1 = [v for v in s if not g.masks[v] & s_mask]
    s2_mask = sum(1 << v for v in s2)
    twins: list[tuple[int, int]] = []
    used: set[int] = set()
    for v in s1:
        if v in used:
            continue
        for u in s1:
            if u > v and u not in used and g.masks[u] == g.masks[v]:
                twins.append((v, u))
                used.update((u, v))
                break
    matching: list[tuple[int, int]] = []
    used = set()
    for u, v in g.edges():
        if (s2_mask >> u) & 1 and (s2_mask >> v) & 1 and u not in used and v not in used:
            matching.append((u, v))
            used.update((u, v))
    if len(twins) >= len(matching):
        return GrowthStep(FIRST, tuple(twins))
    return GrowthStep(SECOND, tuple(matching), d)


# ---------------------------------------------------------------------------
# Expansion


def first_kind_growth(j: Graph, us: Iterable[int]) -> tuple[Graph, GrowthStep]:
    """Give every vertex of ``us`` a nonadjacent twin; the twins get indices ``m, m+1, ...``."""
    us = list(us)
    m = j.n
    twin = {u: m + i for i, u in enumerate(us)}
    edges = list(j.edges())
    for u in us:
        for x in j.adj[u]:
            edges.append((twin[u], x))
            if x in twin and u < x:
                edges.append((twin[u], twin[x]))
    g = Graph.from_edges(m + len(us), edges)
    return g, GrowthStep(FIRST, tuple((u, twin[u]) for u in us))


def _second_kind(j: Graph, ws: list[int], d: int, budget: Budget):
    """Yield every labelled second-kind growth uncontracting ``ws`` in order."""
    m = j.n
    k = len(ws)
    pairs = tuple((w, m + i) for i, w in enumerate(ws))
    capped = {x for p in pairs for x in p}

    def rec(i: int, adj: list[set[int]]):
        if i == k:
            budget.tick()
            yield Graph.from_adjacency(adj), GrowthStep(SECOND, pairs, d)
            return
        u, v = pairs[i]
        nbrs = sorted(adj[u])
        for choice in product((0, 1, 2), repeat=len(nbrs)):
            budget.tick()
            new = [set(s) for s in adj]
            new.append(set())
            new[u] = {v}
            new[v] = {u}
            for x, c in zip(nbrs, choice):
                new[x].discard(u)
                if c != 1:
                    new[u].add(x)
                    new[x].add(u)
                if c != 0:
                    new[v].add(x)
                    new[x].add(v)
            if any(len(new[x]) > d for x in capped if x < len(new)):
                continue
            yield from rec(i + 1, new)

    yield from rec(0, [set(a) for a in j.adj])


def enumerate_expansions(
    j: Graph,
    k: int,
    d: int,
    kinds: Iterable[str] = KINDS,
    *,
    with_steps: bool = False,
    budget: int | None = None,
):
    """All unlabelled k-growths of ``j``, sorted by canonical form.

    With ``with_steps`` the result is a list of ``(graph, step)`` where ``step``
    is a generating step: ``apply_reduction(graph, step)`` equals ``j`` exactly.
    """
    from .enumeration import canonical_form

    kinds = tuple(kinds)
    for kind in kinds:
        if kind not in KINDS:
            raise ValueError(f"unknown growth kind {kind!r}")
    if k < 0:
        raise ValueError("k must be non-negative")
    bud = Budget(budget, "growth expansion")
    found: dict[bytes, tuple[Graph, GrowthStep | None]] = {}
    if k == 0:
        found[canonical_form(j)] = (j, None)
    else:
        for ws in combinations(range(j.n), k):
            if FIRST in kinds:
                bud.tick()
                g, step = first_kind_growth(j, ws)
                found.setdefault(canonical_form(g), (g, step))
            if SECOND in kinds:
                for g, step in _second_kind(j, list(ws), d, bud):
                    found.setdefault(canonical_form(g), (g, step))
    items = [found[key] for key in sorted(found)]
    if with_steps:
        return items
    return [g for g, _ in items]


def growth_bound(m: int, k: int, d: int) -> int:
    """Upper bound 3^(2dk) * 2^m on the number of unlabelled k-growths of an m-vertex graph."""
    return 3 ** (2 * d * k) * 2 ** m
