"""Exact minor and subdivision containment with verifiable certificates.

Both searches are exhaustive backtracking with a node budget.  A search that
runs out of budget raises :class:`~topominor.errors.BudgetExceeded`; ``None``
always means a proven "absent".  Every certificate is re-checked by the
``verify_*`` functions, which share no code with the searches.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import Budget
from .graph import Graph, component_mask, local_vertex_connectivity, mask_of, members

DEFAULT_BUDGET = 10**8


class CertificateError(AssertionError):
    """A returned certificate failed independent re-verification."""


@dataclass(frozen=True)
class MinorModel:
    branch_sets: tuple[tuple[int, ...], ...]  # indexed by H-vertex

    def to_json(self) -> dict:
        return {"branch_sets": [list(s) for s in self.branch_sets]}

    @classmethod
    def from_json(cls, data: dict) -> "MinorModel":
        return cls(tuple(tuple(sorted(s)) for s in data["branch_sets"]))


@dataclass(frozen=True)
class SubdivisionEmbedding:
    branch_map: tuple[int, ...]  # H-vertex -> G-vertex
    paths: tuple[tuple[int, ...], ...]  # aligned with h.edges()

    def to_json(self) -> dict:
        return {"branch_map": list(self.branch_map), "paths": [list(p) for p in self.paths]}

    @classmethod
    def from_json(cls, data: dict) -> "SubdivisionEmbedding":
        return cls(tuple(data["branch_map"]), tuple(tuple(p) for p in data["paths"]))


# ---------------------------------------------------------------------------
# Independent checkers


def verify_minor_model(g: Graph, h: Graph, model: MinorModel) -> None:
    sets = model.branch_sets
    if len(sets) != h.n:
        raise CertificateError(f"{len(sets)} branch sets for {h.n} H-vertices")
    seen: set[int] = set()
    for i, s in enumerate(sets):
        if not s:
            raise CertificateError(f"branch set {i} is empty")
        for v in s:
            if not 0 <= v < g.n:
                raise CertificateError(f"vertex {v} out of range")
            if v in seen:
                raise CertificateError(f"vertex {v} lies in two branch sets")
            seen.add(v)
        # plain DFS, deliberately not the bitmask helpers used by the search
        inside = set(s)
        stack = [s[0]]
        reached = {s[0]}
        while stack:
            x = stack.pop()
            for y in g.adj[x]:
                if y in inside and y not in reached:
                    reached.add(y)
                    stack.append(y)
        if reached != inside:
            raise CertificateError(f"branch set {i} is not connected")
    for a, b in h.edges():
        sb = set(sets[b])
        if not any(y in sb for x in sets[a] for y in g.adj[x]):
            raise CertificateError(f"no G-edge between branch sets {a} and {b}")


def verify_subdivision(g: Graph, h: Graph, emb: SubdivisionEmbedding) -> None:
    bm = emb.branch_map
    if len(bm) != h.n:
        raise CertificateError("branch map has the wrong length")
    if len(set(bm)) != len(bm) or any(not 0 <= v < g.n for v in bm):
        raise CertificateError("branch map is not an injection into V(G)")
    h_edges = h.edges()
    if len(emb.paths) != len(h_edges):
        raise CertificateError("one path per H-edge is required")
    branch = set(bm)
    internal_owner: dict[int, int] = {}
    for idx, ((a, b), p) in enumerate(zip(h_edges, emb.paths)):
        if len(p) < 2 or {p[0], p[-1]} != {bm[a], bm[b]}:
            raise CertificateError(f"path {idx} does not join the images of {a} and {b}")
        if len(set(p)) != len(p):
            raise CertificateError(f"path {idx} repeats a vertex")
        for x, y in zip(p, p[1:]):
            if y not in g.adj[x]:
                raise CertificateError(f"path {idx} uses non-edge {x}-{y}")
        for x in p[1:-1]:
            if x in branch:
                raise CertificateError(f"path {idx} passes through branch vertex {x}")
            if x in internal_owner:
                raise CertificateError(f"paths {internal_owner[x]} and {idx} share vertex {x}")
            internal_owner[x] = idx


def verify_disjoint_connected(g: Graph, parts: Sequence[Iterable[int]], subgraphs: Sequence[Iterable[int]]) -> None:
    parts = [set(p) for p in parts]
    z = set().union(*parts) if parts else set()
    used: set[int] = set()
    if len(subgraphs) != len(parts):
        raise CertificateError("one subgraph per part is required")
    for i, (zi, t) in enumerate(zip(parts, subgraphs)):
        t = set(t)
        if t & used:
            raise CertificateError(f"subgraph {i} overlaps an earlier one")
        used |= t
        if t & z != zi:
            raise CertificateError(f"subgraph {i} meets Z in {sorted(t & z)}, expected {sorted(zi)}")
        start = next(iter(t))
        reached = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in g.adj[x]:
                if y in t and y not in reached:
                    reached.add(y)
                    stack.append(y)
        if reached != t:
            raise CertificateError(f"subgraph {i} is not connected")


# ---------------------------------------------------------------------------
# Connected vertex sets


def connected_sets(
    g: Graph, root: int, allowed: int, max_size: int, budget: Budget | None = None
) -> Iterator[int]:
    """Every connected subset of ``allowed`` containing ``root``, each exactly once.

    ``root`` must be in ``allowed``.  Sets are yielded as bitmasks.
    """
    masks = g.masks

    def rec(s: int, size: int, cand: int, excl: int) -> Iterator[int]:
        if budget is not None:
            budget.tick()
        yield s
        if size >= max_size:
            return
        while cand:
            low = cand & -cand
            cand ^= low
            v = low.bit_length() - 1
            new_s = s | low
            new_cand = (cand | masks[v]) & allowed & ~new_s & ~excl
            yield from rec(new_s, size + 1, new_cand, excl)
            excl |= low

    start = 1 << root
    yield from rec(start, 1, masks[root] & allowed & ~start, start)


# ---------------------------------------------------------------------------
# Minor search


def _placement_order(h: Graph) -> list[int]:
    order: list[int] = []
    placed = set()
    while len(order) < h.n:
        best = max(
            (v for v in range(h.n) if v not in placed),
            key=lambda v: (sum(1 for w in h.adj[v] if w in placed), h.degree(v), -v),
        )
        order.append(best)
        placed.add(best)
    return order


def contains_minor(g: Graph, h: Graph, budget: int | None = DEFAULT_BUDGET) -> MinorModel | None:
    """Find a minor model of ``h`` in ``g``, or prove there is none.

    Branch sets are chosen one H-vertex at a time as connected vertex sets
    adjacent to the sets of already placed H-neighbours.
    """
    if h.n == 0:
        return MinorModel(())
    if h.n > g.n or h.m > g.m:
        return None
    counter = Budget(budget, "minor search")
    order = _placement_order(h)
    gm = g.masks
    sets = [0] * h.n
    placed = [False] * h.n

    def nbhd(s: int) -> int:
        out = 0
        for v in members(s):
            out |= gm[v]
        return out & ~s

    def rec(i: int, free: int) -> bool:
        if i == h.n:
            return True
        x = order[i]
        done = [y for y in h.adj[x] if placed[y]]
        todo = sum(1 for y in h.adj[x] if not placed[y])
        remaining_after = h.n - i - 1
        max_size = free.bit_count() - remaining_after
        if max_size < 1:
            return False
        if done:
            anchor = min(done, key=lambda y: nbhd(sets[y]).bit_count())
            roots = members(nbhd(sets[anchor]) & free)
        else:
            roots = members(free)
        banned = 0
        for r in roots:
            allowed = free & ~banned
            for s in connected_sets(g, r, allowed, max_size, counter):
                ns = nbhd(s)
                if any(ns & sets[y] == 0 for y in done):
                    continue
                if (ns & free & ~s).bit_count() < todo:
                    continue
                sets[x] = s
                placed[x] = True
                if rec(i + 1, free & ~s):
                    return True
                placed[x] = False
                sets[x] = 0
            banned |= 1 << r
        return False

    if not rec(0, g.full_mask):
        return None
    model = MinorModel(tuple(tuple(members(s)) for s in sets))
    verify_minor_model(g, h, model)
    return model


# ---------------------------------------------------------------------------
# Subdivision search


def _pair_connectivity(g: Graph, cutoff: int):
    cache: dict[tuple[int, int], int] = {}

    def kappa(a: int, b: int) -> int:
        key = (a, b) if a < b else (b, a)
        val = cache.get(key)
        if val is None:
            val = local_vertex_connectivity(g, a, b, cutoff=cutoff)
            cache[key] = val
        return val

    return kappa


def contains_subdivision(g: Graph, h: Graph, budget: int | None = DEFAULT_BUDGET) -> SubdivisionEmbedding | None:
    """Find a subgraph of ``g`` that is a subdivision of ``h``, or prove there is none.

    Branch vertices are placed first.  Pruning uses only necessary conditions:
    degrees, pairwise local connectivity (``g`` must have at least as many
    internally disjoint paths between two images as ``h`` has between the
    originals), the supply of spare vertices for edges that cannot be routed
    directly, and the free degree left at each image.  Images that are
    adjacent in ``g`` are joined by that edge.  Remaining edges are routed as
    internally disjoint paths with full backtracking.
    """
    if h.n == 0:
        return SubdivisionEmbedding((), ())
    if h.n > g.n or h.m > g.m or h.max_degree > g.max_degree:
        return None
    counter = Budget(budget, "subdivision search")
    n_spare = g.n - h.n
    h_edges = h.edges()
    h_order = _placement_order(h)
    max_kappa = h.max_degree
    kappa_h = {}
    for a in range(h.n):
        for b in range(a + 1, h.n):
            kappa_h[(a, b)] = kappa_h[(b, a)] = local_vertex_connectivity(h, a, b, cutoff=max_kappa)
    kappa_g = _pair_connectivity(g, max_kappa)
    candidates = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    gm = g.masks

    img = [-1] * h.n
    direct = [0] * h.n  # edges at x already routed by a single G-edge
    state = {"used": 0, "pending": 0}

    def capacity_ok(used: int) -> bool:
        for y in range(h.n):
            if img[y] >= 0:
                need = h.degree(y) - direct[y]
                if need and (gm[img[y]] & ~used).bit_count() < need:
                    return False
        return True

    def place(i: int) -> SubdivisionEmbedding | None:
        if i == h.n:
            return route()
        x = h_order[i]
        dx = h.degree(x)
        for v in candidates:
            if g.degree(v) < dx:
                break
            if (state["used"] >> v) & 1:
                continue
            counter.tick()
            ok = True
            new_direct = []
            new_pending = 0
            for y in range(h.n):
                w = img[y]
                if w < 0:
                    continue
                need = kappa_h[(x, y)]
                if need and kappa_g(v, w) < need:
                    ok = False
                    break
                if h.has_edge(x, y):
                    if g.has_edge(v, w):
                        new_direct.append(y)
                    else:
                        new_pending += 1
            if not ok or state["pending"] + new_pending > n_spare:
                continue
            img[x] = v
            direct[x] = len(new_direct)
            for y in new_direct:
                direct[y] += 1
            state["used"] |= 1 << v
            state["pending"] += new_pending
            if capacity_ok(state["used"]):
                found = place(i + 1)
                if found is not None:
                    return found
            state["pending"] -= new_pending
            state["used"] &= ~(1 << v)
            for y in new_direct:
                direct[y] -= 1
            direct[x] = 0
            img[x] = -1
        return None

    def route() -> SubdivisionEmbedding | None:
        branch = state["used"]
        todo = [(a, b) for a, b in h_edges if not g.has_edge(img[a], img[b])]
        todo.sort(key=lambda e: -(h.degree(e[0]) + h.degree(e[1])))
        free0 = g.full_mask & ~branch
        chosen: dict[tuple[int, int], tuple[int, ...]] = {}

        def reachable(src: int, dst: int, free: int) -> bool:
            # some path src ... dst whose interior lies in free
            target = gm[dst]
            seen = frontier = gm[src] & free
            while frontier:
                if frontier & target:
                    return True
                nxt = 0
                for u in members(frontier):
                    nxt |= gm[u]
                frontier = nxt & free & ~seen
                seen |= frontier
            return False

        def feasible(k: int, free: int) -> bool:
            rest = todo[k:]
            if len(rest) > free.bit_count():
                return False
            need: dict[int, int] = {}
            for a, b in rest:
                need[img[a]] = need.get(img[a], 0) + 1
                need[img[b]] = need.get(img[b], 0) + 1
            for v, c in need.items():
                if (gm[v] & free).bit_count() < c:
                    return False
            return all(reachable(img[a], img[b], free) for a, b in rest)

        def route_edge(k: int, free: int) -> bool:
            if k == len(todo):
                return True
            a, b = todo[k]
            src, dst = img[a], img[b]
            trail = [src]

            # Paths are kept chordless: a vertex adjacent to an earlier trail
            # vertex (other than its predecessor) would allow a shortcut that
            # only frees vertices, so it is never needed.
            def walk(x: int, free: int, blocked: int) -> bool:
                counter.tick()
                options = members(gm[x] & free & ~blocked)
                options.sort(key=lambda y: 0 if (gm[y] >> dst) & 1 else 1)
                for y in options:
                    left = free & ~(1 << y)
                    trail.append(y)
                    if (gm[y] >> dst) & 1:
                        chosen[todo[k]] = tuple(trail) + (dst,)
                        if feasible(k + 1, left) and route_edge(k + 1, left):
                            return True
                    else:
                        nb = blocked | gm[x]
                        if len(todo) - k - 1 <= left.bit_count() - 1 and reachable(y, dst, left & ~nb):
                            if walk(y, left, nb):
                                return True
                    trail.pop()
                return False

            return walk(src, free, 0)

        if not feasible(0, free0):
            return None
        if not route_edge(0, free0):
            return None
        paths = []
        for a, b in h_edges:
            if (a, b) in chosen:
                p = chosen[(a, b)]
                paths.append(p if p[0] == img[a] else p[::-1])
            else:
                paths.append((img[a], img[b]))
        return SubdivisionEmbedding(tuple(img), tuple(paths))

    emb = place(0)
    if emb is not None:
        verify_subdivision(g, h, emb)
    return emb


# ---------------------------------------------------------------------------
# Disjoint connected subgraphs


def _is_minimal_connector(g: Graph, s: int, terminals: int) -> bool:
    for v in members(s & ~terminals):
        rest = s & ~(1 << v)
        root = (rest & -rest).bit_length() - 1
        if component_mask(g, root, rest) == rest:
            return False
    return True


def disjoint_connected_subgraphs(
    g: Graph, parts: Sequence[Iterable[int]], budget: int | None = DEFAULT_BUDGET
) -> list[list[int]] | None:
    """Pairwise disjoint connected vertex sets ``T_i`` with ``T_i ∩ Z = Z_i``.

    ``parts`` are the nonempty disjoint sets ``Z_i``; ``Z`` is their union.
    Each ``T_i`` is searched among inclusion-minimal connected sets containing
    ``Z_i`` (shrinking a solution set never hurts the others).  Returns the
    vertex lists in the order of ``parts``, or ``None`` if none exist.
    """
    part_masks = [mask_of(p) for p in parts]
    if any(m == 0 for m in part_masks):
        raise ValueError("parts must be nonempty")
    z = 0
    for m in part_masks:
        if z & m:
            raise ValueError("parts must be disjoint")
        z |= m
    counter = Budget(budget, "disjoint connected subgraphs")
    order = sorted(range(len(part_masks)), key=lambda i: (-part_masks[i].bit_count(), i))
    result = [0] * len(part_masks)

    def rec(k: int, free: int) -> bool:
        if k == len(order):
            return True
        i = order[k]
        zi = part_masks[i]
        if zi.bit_count() == 1:
            result[i] = zi
            return rec(k + 1, free & ~zi)
        allowed = free & ~(z & ~zi)
        root = (zi & -zi).bit_length() - 1
        if component_mask(g, root, allowed) & zi != zi:
            return False
        max_size = allowed.bit_count()
        for s in connected_sets(g, root, allowed, max_size, counter):
            if s & zi != zi or not _is_minimal_connector(g, s, zi):
                continue
            result[i] = s
            if rec(k + 1, free & ~s):
                return True
        return False

    if not rec(0, g.full_mask):
        return None
    out = [members(s) for s in result]
    verify_disjoint_connected(g, parts, out)
    return out
