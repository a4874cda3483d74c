"""Separations, tangles, rank and free sets by brute force.

A separation is stored as a pair of vertex masks ``(left, right)``.  The
subgraph pair it stands for puts every edge with both ends in ``left`` on the
left side (so the left side is the induced subgraph ``G[left]``) and the
remaining edges on the right.  Tangles orient separations consistently on
vertex sets, so this loses nothing; it only collapses the choice of where the
edges inside ``left & right`` go.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .containment import MinorModel, verify_minor_model
from .errors import Budget, HypothesisViolation
from .graph import Graph, components, mask_of, members
from .named import complete

DEFAULT_BUDGET = 10**7


@dataclass(frozen=True, order=True)
class Separation:
    left: int
    right: int

    @property
    def order(self) -> int:
        return (self.left & self.right).bit_count()

    @property
    def separator(self) -> int:
        return self.left & self.right

    def reversed(self) -> "Separation":
        return Separation(self.right, self.left)

    def to_json(self) -> list:
        return [members(self.left), members(self.right)]

    @classmethod
    def from_sets(cls, left: Iterable[int], right: Iterable[int]) -> "Separation":
        return cls(mask_of(left), mask_of(right))

    def __repr__(self) -> str:
        return f"Separation({members(self.left)}, {members(self.right)})"


def is_separation(g: Graph, sep: Separation) -> bool:
    if sep.left | sep.right != g.full_mask:
        return False
    only_left = sep.left & ~sep.right
    only_right = sep.right & ~sep.left
    return all(not (g.masks[v] & only_right) for v in members(only_left))


def check_separation(g: Graph, sep: Separation) -> None:
    if not is_separation(g, sep):
        raise ValueError(f"{sep!r} is not a separation of the graph")


def separation_union(g: Graph, s1: Separation, s2: Separation) -> Separation:
    """``(A1 ∪ A2, B1 ∩ B2)``."""
    out = Separation(s1.left | s2.left, s1.right & s2.right)
    check_separation(g, out)
    return out


def separation_intersection(g: Graph, s1: Separation, s2: Separation) -> Separation:
    """``(A1 ∩ A2, B1 ∪ B2)``."""
    out = Separation(s1.left & s2.left, s1.right | s2.right)
    check_separation(g, out)
    return out


def enumerate_separations(g: Graph, theta: int, budget: int | None = DEFAULT_BUDGET) -> list[Separation]:
    """Every ordered separation of order < theta, each exactly once.

    For each separator S the components of G - S are split between the two
    exclusive sides in all 2^c ways.
    """
    bud = Budget(budget, "separation enumeration")
    out: list[Separation] = []
    full = g.full_mask
    for size in range(0, min(theta, g.n + 1)):
        for sep in combinations(range(g.n), size):
            s = mask_of(sep)
            comps = components(g, full & ~s)
            for bits in range(1 << len(comps)):
                bud.tick()
                left = s
                for i, c in enumerate(comps):
                    if (bits >> i) & 1:
                        left |= c
                right = s | (full & ~left)
                out.append(Separation(left, right))
    out.sort()
    return out


# ---------------------------------------------------------------------------
# Tangles


@dataclass(frozen=True)
class Tangle:
    graph: Graph
    theta: int
    members: frozenset[Separation]
    labels: tuple[int, ...] | None = None  # original vertex names after restriction

    def __contains__(self, sep: Separation) -> bool:
        return sep in self.members

    def to_json(self) -> dict:
        out = {
            "theta": self.theta,
            "n": self.graph.n,
            "members": [s.to_json() for s in sorted(self.members)],
        }
        if self.labels is not None:
            out["labels"] = list(self.labels)
        return out

    @classmethod
    def from_json(cls, g: Graph, data: dict) -> "Tangle":
        mem = frozenset(Separation.from_sets(a, b) for a, b in data["members"])
        labels = tuple(data["labels"]) if "labels" in data else None
        return cls(g, int(data["theta"]), mem, labels)


@dataclass
class TangleReport:
    ok: bool
    axiom: str | None = None
    witness: list[Separation] = field(default_factory=list)
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok, "axiom": self.axiom, "witness": [s.to_json() for s in self.witness],
                "detail": self.detail}


def _edge_mask(g: Graph, vertex_mask: int, edge_index: dict) -> int:
    out = 0
    for v in members(vertex_mask):
        for w in members(g.masks[v] & vertex_mask):
            if v < w:
                out |= 1 << edge_index[(v, w)]
    return out


def is_tangle(g: Graph, theta: int, oriented: Iterable[Separation], budget: int | None = DEFAULT_BUDGET,
              separations: Sequence[Separation] | None = None) -> TangleReport:
    """Check the three tangle axioms; on failure name the axiom and the offending separations."""
    oriented = set(oriented)
    bud = Budget(budget, "tangle check")
    for s in oriented:
        if not is_separation(g, s):
            return TangleReport(False, "membership", [s], "not a separation of the graph")
        if s.order >= theta:
            return TangleReport(False, "membership", [s], f"order {s.order} >= theta {theta}")
    seps = separations if separations is not None else enumerate_separations(g, theta, budget)
    for s in seps:
        bud.tick()
        fwd, back = s in oriented, s.reversed() in oriented
        if not fwd and not back:
            return TangleReport(False, "i", [s], "neither orientation is a member")
        if fwd and back and s.left != s.right:
            return TangleReport(False, "i", [s, s.reversed()], "both orientations are members")
    for s in oriented:
        if s.left == g.full_mask:
            return TangleReport(False, "iii", [s], "left side contains every vertex")
    # axiom (ii): only lefts maximal under inclusion can be part of a covering triple
    lefts = sorted({s.left for s in oriented}, key=lambda m: -m.bit_count())
    maximal: list[int] = []
    for a in lefts:
        if not any(a & b == a for b in maximal):
            maximal.append(a)
    edge_index = {e: i for i, e in enumerate(g.edges())}
    all_edges = (1 << len(edge_index)) - 1
    emask = [_edge_mask(g, a, edge_index) for a in maximal]
    full = g.full_mask
    rep = {}
    for s in oriented:
        rep.setdefault(s.left, s)
    k = len(maximal)
    for i in range(k):
        for j in range(i, k):
            vij = maximal[i] | maximal[j]
            eij = emask[i] | emask[j]
            for l in range(j, k):
                bud.tick()
                if vij | maximal[l] == full and eij | emask[l] == all_edges:
                    wit = [rep[maximal[i]], rep[maximal[j]], rep[maximal[l]]]
                    return TangleReport(False, "ii", wit, "three left sides cover the graph")
    return TangleReport(True)


def clique_minor_tangle(g: Graph, model: MinorModel | Sequence[Iterable[int]], theta: int,
                        budget: int | None = DEFAULT_BUDGET, check: bool = True) -> Tangle:
    """Orient each separation of order < theta toward the side that wholly contains some branch set.

    Needs at least ceil(3*theta/2) branch sets.
    """
    if not isinstance(model, MinorModel):
        model = MinorModel(tuple(tuple(sorted(b)) for b in model))
    t = len(model.branch_sets)
    need = math.ceil(3 * theta / 2)
    if t < need:
        raise HypothesisViolation("too few branch sets for this order", detail=f"t={t} < ceil(3*{theta}/2)={need}")
    verify_minor_model(g, complete(t), model)
    branch = [mask_of(b) for b in model.branch_sets]
    seps = enumerate_separations(g, theta, budget)
    chosen = set()
    for s in seps:
        only_l = s.left & ~s.right
        only_r = s.right & ~s.left
        in_l = any(b & only_l == b for b in branch)
        in_r = any(b & only_r == b for b in branch)
        if in_l == in_r:
            raise HypothesisViolation("orientation is ill-defined", detail=repr(s))
        if in_r:
            chosen.add(s)
    tangle = Tangle(g, theta, frozenset(chosen))
    if check:
        rep = is_tangle(g, theta, chosen, budget, seps)
        if not rep:
            raise HypothesisViolation(f"tangle axiom {rep.axiom} fails", detail=rep.detail)
    return tangle


def restrict_tangle(t: Tangle, w: Iterable[int]) -> Tangle:
    """The tangle T \\ W in G - W of order theta - |W|.

    Members are the separations (A - W, B - W) for (A, B) in T with W inside
    the separator.  Vertices of G - W keep their relative order.
    """
    w = sorted(set(w))
    if len(w) >= t.theta:
        raise HypothesisViolation("|W| must be smaller than the tangle order", detail=f"|W|={len(w)}, theta={t.theta}")
    wm = mask_of(w)
    g2, index = t.graph.delete_vertices(w)

    def remap(mask: int) -> int:
        out = 0
        for v in members(mask & ~wm):
            out |= 1 << index[v]
        return out

    new_theta = t.theta - len(w)
    mem = set()
    for s in t.members:
        if s.separator & wm == wm and s.order - len(w) < new_theta:
            mem.add(Separation(remap(s.left), remap(s.right)))
    old_labels = t.labels if t.labels is not None else tuple(range(t.graph.n))
    labels = tuple(old_labels[v] for v in range(t.graph.n) if not (wm >> v) & 1)
    return Tangle(g2, new_theta, frozenset(mem), labels)


def rank(t: Tangle, x: Iterable[int] | int) -> int:
    """Least order of a member whose left side contains X, or theta if none does."""
    xm = x if isinstance(x, int) else mask_of(x)
    best = t.theta
    for s in t.members:
        if s.left & xm == xm and s.order < best:
            best = s.order
    return best


def is_free(t: Tangle, x: Iterable[int]) -> bool:
    xs = set(x)
    return rank(t, mask_of(xs)) == len(xs)


# ---------------------------------------------------------------------------
# Nexus


@dataclass(frozen=True)
class Nexus:
    center: int
    paths: tuple[tuple[int, ...], ...]

    def vertex_mask(self) -> int:
        out = 0
        for p in self.paths:
            out |= mask_of(p)
        return out

    def to_json(self) -> dict:
        return {"center": self.center, "paths": [list(p) for p in self.paths]}


def make_nexus(g: Graph, center: int, paths: Iterable[Sequence[int]]) -> Nexus:
    """Validate paths of ``g`` with ``center`` at one end; they are stored starting at ``center``."""
    out = []
    for p in paths:
        p = list(p)
        if not p:
            raise ValueError("empty path")
        if p[0] != center:
            if p[-1] != center:
                raise ValueError(f"path {p} does not end at {center}")
            p.reverse()
        if len(set(p)) != len(p):
            raise ValueError(f"path {p} repeats a vertex")
        for a, b in zip(p, p[1:]):
            if not g.has_edge(a, b):
                raise ValueError(f"{a}-{b} is not an edge")
        out.append(tuple(p))
    return Nexus(center, tuple(out))


def nexus_rank(t: Tangle, nexus: Nexus) -> int:
    return rank(t, nexus.vertex_mask())


def starrank_bound(k: int, max_degree: int) -> int:
    """(k d')^k, read as 1 when k = 0."""
    return (k * max_degree) ** k


# ---------------------------------------------------------------------------
# Laws


def check_cross_law(t: Tangle) -> list[tuple[Separation, Separation, str]]:
    """Violations of the order identity and closure under union / intersection of members."""
    bad = []
    mem = sorted(t.members)
    for i, s1 in enumerate(mem):
        for s2 in mem[i:]:
            u = Separation(s1.left | s2.left, s1.right & s2.right)
            x = Separation(s1.left & s2.left, s1.right | s2.right)
            if u.order + x.order != s1.order + s2.order:
                bad.append((s1, s2, "order identity"))
            if u.order < t.theta and u not in t.members:
                bad.append((s1, s2, "union not a member"))
            if x.order < t.theta and x not in t.members:
                bad.append((s1, s2, "intersection not a member"))
    return bad


def check_expand_law(t: Tangle, separations: Sequence[Separation] | None = None) -> list[tuple[Separation, Separation]]:
    """Pairs (member, separation) where the separation should be a member by domination but is not."""
    seps = separations if separations is not None else enumerate_separations(t.graph, t.theta)
    bad = []
    for s2 in seps:
        if s2 in t.members:
            continue
        for s1 in t.members:
            if s1.right & s2.right == s1.right or s2.left & s1.left == s2.left:
                bad.append((s1, s2))
                break
    return bad


# ---------------------------------------------------------------------------
# Free fans


def max_separation(t: Tangle, w: Iterable[int]) -> Separation:
    """The member of order |W| with W on the left that dominates all others.

    W must be free.  Returns the union of all such members after checking it
    is itself one of them.
    """
    w = set(w)
    wm = mask_of(w)
    if len(w) >= t.theta or not is_free(t, w):
        raise HypothesisViolation("W is not free", detail=f"W={sorted(w)}")
    family = [s for s in t.members if s.order == len(w) and s.left & wm == wm]
    left, right = 0, t.graph.full_mask
    for s in family:
        left |= s.left
        right &= s.right
    top = Separation(left, right)
    if top not in family:
        raise HypothesisViolation("union of the family is not a member", detail=repr(top))
    return top


def find_free_fans(g: Graph, t: Tangle, s: int, d: int, budget: int | None = DEFAULT_BUDGET):
    """Search for distinct z_1..z_s and disjoint d-sets W_i of neighbours of z_i with the union of the W_i free in T \\ Z.

    Returns ``(zs, ws)`` with ``ws[i]`` a sorted tuple, or None.  Labels are
    vertices of ``g``.
    """
    if s == 0:
        return (), ()
    if d > g.max_degree or s >= t.theta:
        return None
    bud = Budget(budget, "free fan search")
    for zs in combinations(range(g.n), s):
        sub = restrict_tangle(t, zs)
        index = {old: new for new, old in enumerate(sub.labels)}
        zm = mask_of(zs)

        def pick(i: int, used: int, chosen: list):
            if i == s:
                union = [index[v] for ws in chosen for v in ws]
                if is_free(sub, union):
                    return list(chosen)
                return None
            for ws in combinations(members(g.masks[zs[i]] & ~zm & ~used), d):
                bud.tick()
                chosen.append(ws)
                hit = pick(i + 1, used | mask_of(ws), chosen)
                if hit is not None:
                    return hit
                chosen.pop()
            return None

        found = pick(0, 0, [])
        if found is not None:
            return tuple(zs), tuple(tuple(ws) for ws in found)
    return None
