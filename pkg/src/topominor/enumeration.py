"""Canonical forms, isomorphism, and exhaustive unlabelled enumeration.

The canonical labelling is an individualisation-refinement search: equitable
partition refinement, branching on the first smallest non-singleton cell, and
pruning with automorphisms discovered when two leaves give identical relabelled
graphs.  The canonical form is the graph6 encoding of the relabelled graph with
the lexicographically largest adjacency rows among the leaves reached.
"""

from __future__ import annotations

import json
import time
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Callable, Iterable

from . import graph6
from .errors import Budget
from .graph import Graph, is_connected, vertex_connectivity

DEFAULT_MAX_VERTICES = 64


class CanonicalSizeError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Partition refinement


def _refine(cells: list[list[int]], queue: deque, masks: tuple[int, ...]) -> list[list[int]]:
    """Refine an ordered partition to the coarsest equitable one below it.

    ``queue`` holds the splitter cells (by identity).  Fragments of a split
    cell are ordered by their neighbour count into the splitter, which keeps
    the whole procedure label-invariant.
    """
    queued = {id(c) for c in queue}
    singletons = sum(1 for c in cells if len(c) == 1)
    n_cells = len(cells)
    while queue and singletons < n_cells:
        w = queue.popleft()
        if id(w) not in queued:
            continue
        queued.discard(id(w))
        wmask = 0
        for x in w:
            wmask |= 1 << x
        out = []
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            counts = [(masks[x] & wmask).bit_count() for x in cell]
            first = counts[0]
            if all(c == first for c in counts):
                out.append(cell)
                continue
            groups: dict[int, list[int]] = {}
            for x, c in zip(cell, counts):
                groups.setdefault(c, []).append(x)
            frags = [groups[c] for c in sorted(groups)]
            out.extend(frags)
            if id(cell) in queued:
                queued.discard(id(cell))
                keep = frags
            else:
                big = max(range(len(frags)), key=lambda i: (len(frags[i]), -i))
                keep = [f for i, f in enumerate(frags) if i != big]
            for f in keep:
                queue.append(f)
                queued.add(id(f))
            singletons += sum(1 for f in frags if len(f) == 1)
            n_cells += len(frags) - 1
        cells = out
    return cells


def equitable_partition(g: Graph, cells: list[list[int]] | None = None) -> list[list[int]]:
    if cells is None:
        cells = [list(range(g.n))] if g.n else []
    cells = [list(c) for c in cells]
    return _refine(cells, deque(cells), g.masks)


# ---------------------------------------------------------------------------
# Search tree


class _Search:
    def __init__(self, g: Graph, budget: Budget):
        self.g = g
        self.masks = g.masks
        self.budget = budget
        self.first = None  # (cert, lab)
        self.best = None
        self.gens: list[tuple[int, ...]] = []
        self.path: list[int] = []
        self.explored: list[list[int]] = []

    def cert(self, lab: list[int]) -> tuple[int, ...]:
        pos = [0] * self.g.n
        for i, v in enumerate(lab):
            pos[v] = i
        rows = []
        adj = self.g.adj
        for v in lab:
            r = 0
            for w in adj[v]:
                r |= 1 << pos[w]
            rows.append(r)
        return tuple(rows)

    def orbits_fixing(self, prefix: list[int]) -> list[int]:
        n = self.g.n
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for gamma in self.gens:
            if any(gamma[p] != p for p in prefix):
                continue
            for x in range(n):
                a, b = find(x), find(gamma[x])
                if a != b:
                    parent[max(a, b)] = min(a, b)
        return [find(x) for x in range(n)]

    def add_generator(self, lab_from: list[int], lab_to: list[int]) -> None:
        gamma = [0] * self.g.n
        for a, b in zip(lab_from, lab_to):
            gamma[a] = b
        gamma = tuple(gamma)
        if any(gamma[x] != x for x in range(self.g.n)):
            self.gens.append(gamma)

    def jump_level(self) -> int | None:
        for level in range(len(self.path)):
            siblings = self.explored[level]
            if len(siblings) < 2:
                continue
            orb = self.orbits_fixing(self.path[:level])
            here = orb[self.path[level]]
            if any(orb[s] == here for s in siblings[:-1]):
                return level
        return None

    def leaf(self, cells: list[list[int]]) -> int | None:
        lab = [c[0] for c in cells]
        cert = self.cert(lab)
        if self.first is None:
            self.first = self.best = (cert, lab)
            return None
        if cert == self.first[0]:
            self.add_generator(self.first[1], lab)
            return self.jump_level()
        if cert == self.best[0]:
            self.add_generator(self.best[1], lab)
            return self.jump_level()
        if cert > self.best[0]:
            self.best = (cert, lab)
        return None

    def dfs(self, cells: list[list[int]]) -> int | None:
        self.budget.tick()
        target = None
        for i, c in enumerate(cells):
            if len(c) > 1 and (target is None or len(c) < len(cells[target])):
                target = i
                if len(c) == 2:
                    break
        if target is None:
            return self.leaf(cells)
        level = len(self.path)
        explored: list[int] = []
        self.explored.append(explored)
        try:
            for v in list(cells[target]):
                if explored:
                    orb = self.orbits_fixing(self.path)
                    if any(orb[v] == orb[e] for e in explored):
                        continue
                explored.append(v)
                rest = [x for x in cells[target] if x != v]
                single = [v]
                child = cells[:target] + [single, rest] + cells[target + 1:]
                child = _refine(child, deque([single]), self.masks)
                self.path.append(v)
                try:
                    r = self.dfs(child)
                finally:
                    self.path.pop()
                if r is not None and r < level:
                    return r
            return None
        finally:
            self.explored.pop()


@dataclass(frozen=True)
class Labelling:
    """Result of a canonical labelling run."""

    order: tuple[int, ...]  # order[i] = original vertex placed at canonical position i
    generators: tuple[tuple[int, ...], ...]  # automorphisms found along the way

    @property
    def position(self) -> tuple[int, ...]:
        pos = [0] * len(self.order)
        for i, v in enumerate(self.order):
            pos[v] = i
        return tuple(pos)


def canonical_labelling(g: Graph, budget: int | None = None) -> Labelling:
    search = _Search(g, Budget(budget, "canonical labelling"))
    if g.n == 0:
        return Labelling((), ())
    root = equitable_partition(g)
    search.dfs(root)
    return Labelling(tuple(search.best[1]), tuple(search.gens))


def canonical_graph(g: Graph, budget: int | None = None) -> Graph:
    lab = canonical_labelling(g, budget)
    return g.relabel(lab.position)


def canonical_form(g: Graph, max_vertices: int = DEFAULT_MAX_VERTICES, budget: int | None = None) -> bytes:
    """Isomorphism-invariant byte string: graph6 of the canonically relabelled graph."""
    if g.n > max_vertices:
        raise CanonicalSizeError(f"graph has {g.n} vertices, bound is {max_vertices}")
    return graph6.encode(canonical_graph(g, budget))


def is_isomorphic(g: Graph, h: Graph, max_vertices: int = DEFAULT_MAX_VERTICES) -> bool:
    if g.n != h.n or g.m != h.m or sorted(g.degrees) != sorted(h.degrees):
        return False
    return canonical_form(g, max_vertices) == canonical_form(h, max_vertices)


def automorphism_orbits(g: Graph) -> list[int]:
    """Orbit representative (least vertex) for each vertex under Aut(g)."""
    search = _Search(g, Budget(None))
    if g.n == 0:
        return []
    search.dfs(equitable_partition(g))
    return search.orbits_fixing([])


# ---------------------------------------------------------------------------
# Enumeration


@dataclass(frozen=True)
class Constraints:
    min_degree: int | None = None
    max_degree: int | None = None
    connectivity: int | None = None
    forbidden_subdivision: Graph | None = None
    forbidden_minor: Graph | None = None

    def to_json(self) -> dict:
        out = {}
        for k, v in asdict(self).items():
            if v is None:
                continue
            val = getattr(self, k)
            out[k] = graph6.emit_graph6(val) if isinstance(val, Graph) else val
        return out


def _extend(args):
    parents, k, n, max_degree, min_degree, hereditary = args
    found: dict[bytes, Graph] = {}
    need = None if min_degree is None else min_degree - (n - k)
    for g in parents:
        degs = g.degrees
        for s in range(1 << (k - 1)):
            size = s.bit_count()
            if max_degree is not None and size > max_degree:
                continue
            new_degs = list(degs) + [size]
            nbrs = [v for v in range(k - 1) if (s >> v) & 1]
            for v in nbrs:
                new_degs[v] += 1
            if max_degree is not None and any(new_degs[v] > max_degree for v in nbrs):
                continue
            if need is not None and min(new_degs) < need:
                continue
            child = Graph.from_edges(k, g.edges() + [(v, k - 1) for v in nbrs])
            if hereditary is not None and not hereditary(child):
                continue
            cf = canonical_form(child, max_vertices=max(DEFAULT_MAX_VERTICES, k))
            if cf not in found:
                found[cf] = graph6.decode(cf)
    return found


def _chunks(items: list, parts: int) -> list[list]:
    parts = max(1, min(parts, len(items)))
    return [items[i::parts] for i in range(parts)]


def enumerate_unlabelled(
    n: int,
    pred: Callable[[Graph], bool] | None = None,
    *,
    max_degree: int | None = None,
    min_degree: int | None = None,
    hereditary: Callable[[Graph], bool] | None = None,
    budget: int | None = None,
    workers: int = 1,
) -> list[Graph]:
    """One canonically labelled representative per isomorphism class on ``n`` vertices.

    Graphs are grown one vertex at a time and deduplicated by canonical form.
    ``max_degree``/``min_degree`` prune intermediate levels (every induced
    subgraph on ``k`` vertices of a target graph has max degree at most the
    bound and min degree at least ``min_degree - (n - k)``).  ``hereditary``
    is an optional predicate closed under induced subgraphs, applied at every
    level.  ``pred`` filters the final level only.  Results are sorted by
    canonical form.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    counter = Budget(budget, "enumeration")
    level: dict[bytes, Graph] = {graph6.encode(Graph.empty(0)): Graph.empty(0)}
    for k in range(1, n + 1):
        parents = list(level.values())
        counter.tick(len(parents) * (1 << (k - 1)))
        jobs = [(chunk, k, n, max_degree, min_degree, hereditary) for chunk in _chunks(parents, workers)]
        level = {}
        if workers > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(_extend, jobs))
        else:
            results = [_extend(job) for job in jobs]
        for found in results:
            for cf, g in found.items():
                level.setdefault(cf, g)
    out = [level[cf] for cf in sorted(level)]
    if pred is not None:
        out = [g for g in out if pred(g)]
    return out


class _ClassPredicate:
    """Picklable membership test for a :class:`Constraints` (worker processes need it)."""

    def __init__(self, c: Constraints, budget: int | None):
        self.c = c
        self.budget = budget

    def __call__(self, g: Graph) -> bool:
        from .containment import contains_minor, contains_subdivision

        c = self.c
        if c.min_degree is not None and g.n and g.min_degree < c.min_degree:
            return False
        if c.max_degree is not None and g.max_degree > c.max_degree:
            return False
        if c.connectivity is not None and c.connectivity > 0:
            if c.connectivity == 1:
                if g.n == 0 or not is_connected(g):
                    return False
            elif vertex_connectivity(g) < c.connectivity:
                return False
        if c.forbidden_minor is not None and contains_minor(g, c.forbidden_minor, budget=self.budget) is not None:
            return False
        if c.forbidden_subdivision is not None and contains_subdivision(g, c.forbidden_subdivision, budget=self.budget) is not None:
            return False
        return True


def _class_predicate(c: Constraints, budget: int | None) -> Callable[[Graph], bool]:
    return _ClassPredicate(c, budget)


def _forbidden_hereditary(c: Constraints, budget: int | None):
    if c.forbidden_minor is None and c.forbidden_subdivision is None:
        return None
    return _class_predicate(Constraints(forbidden_minor=c.forbidden_minor, forbidden_subdivision=c.forbidden_subdivision), budget)


def enumerate_class(n: int, constraints: Constraints | None = None, *, budget: int | None = None, workers: int = 1) -> list[Graph]:
    c = constraints or Constraints()
    return enumerate_unlabelled(
        n,
        _class_predicate(c, budget),
        max_degree=c.max_degree,
        min_degree=c.min_degree,
        hereditary=_forbidden_hereditary(c, budget),
        budget=budget,
        workers=workers,
    )


def count_class(n: int, constraints: Constraints | None = None, *, budget: int | None = None, workers: int = 1) -> int:
    """Exact number of unlabelled ``n``-vertex graphs meeting ``constraints``."""
    return len(enumerate_class(n, constraints, budget=budget, workers=workers))


def count_record(n: int, constraints: Constraints | None = None, **kwargs) -> dict:
    """Count plus the JSONL record fields ``{n, constraints, count, runtime_ms}``."""
    c = constraints or Constraints()
    t0 = time.perf_counter()
    count = count_class(n, c, **kwargs)
    return {
        "n": n,
        "constraints": c.to_json(),
        "count": count,
        "runtime_ms": round((time.perf_counter() - t0) * 1000, 3),
    }


def write_graph6_stream(graphs: Iterable[Graph], fh) -> int:
    count = 0
    for g in graphs:
        fh.write(graph6.emit_graph6(g) + "\n")
        count += 1
    return count


def dumps_record(record: dict) -> str:
    return json.dumps(record, sort_keys=True)
