"""Regular graphs with no subdivision of K_{d+1}, built from copies of a block R.

A base graph D on m vertices is blown up by replacing each vertex with a copy
of R and each edge of D with one edge between the port sets of the two copies,
the new edges forming a matching.  For odd d the block is K_{d-1,d-1} plus a
perfect matching on one side; for even d it is the six-part block with
distinguished vertices s, t, u and their mirrors.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .errors import HypothesisViolation
from .graph import Graph, component_mask, mask_of, members, vertex_connectivity


@dataclass(frozen=True)
class GadgetBlueprint:
    d: int
    parity: str  # "odd" | "even"
    block: Graph
    roles: dict[str, tuple[int, ...]]
    special: dict[str, int] = field(default_factory=dict)
    ports: tuple[int, ...] = ()

    @property
    def size(self) -> int:
        return self.block.n

    def role_of(self, v: int) -> str:
        for name, vs in self.roles.items():
            if v in vs:
                return name
        raise KeyError(v)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "parity": self.parity,
            "n": self.block.n,
            "edges": [list(e) for e in self.block.edges()],
            "roles": {k: list(v) for k, v in self.roles.items()},
            "special": dict(self.special),
            "ports": list(self.ports),
        }


def build_block(d: int) -> GadgetBlueprint:
    if d < 5:
        raise ValueError(f"d must be at least 5, got {d}")
    if d % 2:
        x = tuple(range(d - 1))
        y = tuple(range(d - 1, 2 * d - 2))
        edges = [(a, b) for a in x for b in y]
        edges += [(y[i], y[i + 1]) for i in range(0, len(y), 2)]
        return GadgetBlueprint(d, "odd", Graph.from_edges(2 * d - 2, edges), {"X": x, "Y": y}, {}, x)

    h = d // 2
    sizes = [("A", h), ("B", d - 1), ("C", h - 1), ("C'", h - 1), ("B'", d - 1), ("A'", h)]
    roles: dict[str, tuple[int, ...]] = {}
    nxt = 0
    for name, k in sizes:
        roles[name] = tuple(range(nxt, nxt + k))
        nxt += k
    A, B, C, Cp, Bp, Ap = (roles[k] for k in ("A", "B", "C", "C'", "B'", "A'"))
    special = {"s": B[0], "u": B[-1], "t": C[0], "s'": Bp[0], "u'": Bp[-1], "t'": Cp[0]}
    edges = []
    for side_a, side_b, side_c, s, t, u in ((A, B, C, special["s"], special["t"], special["u"]),
                                           (Ap, Bp, Cp, special["s'"], special["t'"], special["u'"])):
        edges += [(p, q) for p in side_a + side_c for q in side_b if (p, q) != (t, s)]
        rest = [b for b in side_b if b != u]
        edges += [(rest[i], rest[i + 1]) for i in range(0, len(rest), 2)]
        edges.append((s, u))
    c = len(C)
    edges += [(C[i], Cp[(i + 1) % c]) for i in range(c)]
    edges.append((special["t"], special["t'"]))
    block = Graph.from_edges(4 * d - 4, edges)
    return GadgetBlueprint(d, "even", block, roles, special, A + Ap)


def check_base(dd: Graph, d: int) -> None:
    """Raise unless ``dd`` is a valid base graph for degree ``d``."""
    need = d - 1 if d % 2 else d
    if dd.n < 2:
        raise HypothesisViolation("base has fewer than 2 vertices")
    if not dd.is_regular(need):
        bad = next(v for v in range(dd.n) if dd.degree(v) != need)
        raise HypothesisViolation(f"base must be {need}-regular", vertex=bad, detail=f"degree {dd.degree(bad)}")
    k = vertex_connectivity(dd)
    if k < need:
        raise HypothesisViolation(f"base must be {need}-connected", detail=f"connectivity {k}")


def natural_blocks(blueprint: GadgetBlueprint, m: int) -> list[tuple[int, ...]]:
    s = blueprint.size
    return [tuple(range(i * s, (i + 1) * s)) for i in range(m)]


def assemble_gadget(dd: Graph, d: int, seed: int = 0) -> Graph:
    """Blow up ``dd`` into the d-regular graph G_D.

    Copy ``i`` of the block occupies vertices ``i*|R| .. (i+1)*|R|-1`` in
    blueprint order.  Base edges are taken in lexicographic order and each
    endpoint uses its next unused port; ``seed`` only permutes the port order
    inside each copy.
    """
    bp = build_block(d)
    check_base(dd, d)
    rng = random.Random(seed)
    orders = []
    for _ in range(dd.n):
        ports = list(bp.ports)
        rng.shuffle(ports)
        orders.append(ports)
    nxt = [0] * dd.n
    s = bp.size
    edges = []
    for i in range(dd.n):
        edges += [(i * s + a, i * s + b) for a, b in bp.block.edges()]
    for u, v in dd.edges():
        pu = orders[u][nxt[u]]
        pv = orders[v][nxt[v]]
        nxt[u] += 1
        nxt[v] += 1
        edges.append((u * s + pu, v * s + pv))
    return Graph.from_edges(s * dd.n, edges)


# ---------------------------------------------------------------------------
# Certificate


@dataclass(frozen=True)
class NoSubdivisionCertificate:
    d: int
    parity: str
    blocks: tuple[tuple[int, ...], ...]
    witnesses: tuple[dict, ...]

    def to_json(self) -> dict:
        return {"d": self.d, "parity": self.parity, "blocks": [list(b) for b in self.blocks],
                "witnesses": list(self.witnesses)}


def _outside_counts(g: Graph, z: int, vertices) -> dict[int, int]:
    return {v: (g.masks[v] & ~z).bit_count() for v in vertices}


def _littlebag(g: Graph, d: int, i: int, z_list, x_list, allowed_prime, label: str) -> dict:
    """Check the bag conditions for one (Z, X) and report X'.

    ``allowed_prime`` lists the X-vertices allowed to have two or more
    outside neighbours (the only places a branch vertex could then sit).
    """
    z = mask_of(z_list)
    if len(z_list) != 2 * d - 2:
        raise HypothesisViolation("|Z| != 2d-2", block=i, role=label, detail=f"|Z|={len(z_list)}")
    if len(x_list) > d - 1:
        raise HypothesisViolation("|X| > d-1", block=i, role=label, detail=f"|X|={len(x_list)}")
    xs = set(x_list)
    out = _outside_counts(g, z, z_list)
    for v in z_list:
        if v not in xs and out[v]:
            raise HypothesisViolation("Z\\X vertex has an outside neighbour", block=i, role=label, vertex=v,
                                      detail=f"{out[v]} outside neighbours")
    ones = [v for v in x_list if out[v] == 1]
    if len(ones) < 3:
        raise HypothesisViolation("fewer than three X-vertices with exactly one outside neighbour",
                                  block=i, role=label, detail=f"found {len(ones)}")
    x_prime = [v for v in x_list if out[v] >= 2]
    for v in x_prime:
        if v not in allowed_prime:
            raise HypothesisViolation("X-vertex with two or more outside neighbours", block=i, role=label,
                                      vertex=v, detail=f"{out[v]} outside neighbours")
    return {"Z": list(z_list), "X": list(x_list), "outside": {str(v): out[v] for v in z_list},
            "X_prime": x_prime}


def no_subdivision_certificate(g: Graph, blueprint: GadgetBlueprint, blocks: Sequence[Sequence[int]]) -> NoSubdivisionCertificate:
    """Verify, block by block, the conditions that rule out branch vertices of a K_{d+1} subdivision.

    ``blocks[i][j]`` is the vertex of ``g`` playing blueprint vertex ``j`` in
    copy ``i``.  Raises :class:`HypothesisViolation` naming the first failed
    clause.
    """
    d = blueprint.d
    for v in range(g.n):
        if g.degree(v) != d:
            raise HypothesisViolation("graph is not d-regular", vertex=v, detail=f"degree {g.degree(v)}")
    seen: dict[int, int] = {}
    for i, blk in enumerate(blocks):
        if len(blk) != blueprint.size:
            raise HypothesisViolation("block has the wrong size", block=i, detail=f"{len(blk)} != {blueprint.size}")
        for v in blk:
            if not 0 <= v < g.n:
                raise HypothesisViolation("vertex out of range", block=i, vertex=v)
            if v in seen:
                raise HypothesisViolation("blocks overlap", block=i, vertex=v, detail=f"also in block {seen[v]}")
            seen[v] = i
    if len(seen) != g.n:
        missing = next(v for v in range(g.n) if v not in seen)
        raise HypothesisViolation("blocks do not cover V(G)", vertex=missing)

    witnesses = []
    for i, blk in enumerate(blocks):
        role = {name: [blk[j] for j in vs] for name, vs in blueprint.roles.items()}
        if blueprint.parity == "odd":
            w = _littlebag(g, d, i, list(blk), role["X"], (), "X")
            witnesses.append({"block": i, "bag": w})
            continue
        A, B, C, Cp, Bp, Ap = (role[k] for k in ("A", "B", "C", "C'", "B'", "A'"))
        near = _littlebag(g, d, i, A + B + C, A + C, set(C), "A∪B∪C")
        far = _littlebag(g, d, i, Ap + Bp + Cp, Ap + Cp, set(Cp), "A'∪B'∪C'")
        cuts = []
        for inner, cut, label in ((B + C, A + Cp, "A∪C'"), (Bp + Cp, Ap + C, "A'∪C")):
            if len(cut) != d - 1:
                raise HypothesisViolation("cutset does not have d-1 vertices", block=i, role=label,
                                          detail=f"|cut|={len(cut)}")
            cut_m = mask_of(cut)
            inner_m = mask_of(inner)
            reach = component_mask(g, inner[0], g.full_mask & ~cut_m)
            if reach & ~inner_m:
                leak = members(reach & ~inner_m)[0]
                raise HypothesisViolation("cutset does not separate its side", block=i, role=label, vertex=leak)
            if (reach | cut_m) == g.full_mask:
                raise HypothesisViolation("cutset leaves nothing on the far side", block=i, role=label)
            cuts.append({"cut": cut, "side": inner})
        if len(C) + len(Cp) >= d + 1:
            raise HypothesisViolation("|C ∪ C'| >= d+1", block=i, detail=f"{len(C) + len(Cp)}")
        witnesses.append({"block": i, "bags": [near, far], "cuts": cuts, "C_union_size": len(C) + len(Cp)})
    return NoSubdivisionCertificate(d, blueprint.parity, tuple(tuple(b) for b in blocks), tuple(witnesses))


# ---------------------------------------------------------------------------
# Recovering the base graph


def _bfs_order(h: Graph) -> list[int]:
    order: list[int] = []
    seen = set()
    for start in sorted(range(h.n), key=lambda v: (-h.degree(v), v)):
        if start in seen:
            continue
        seen.add(start)
        queue = [start]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in sorted(h.adj[v], key=lambda w: (-h.degree(w), w)):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return order


def subgraph_copies(g: Graph, r: Graph) -> dict[frozenset[int], tuple[int, ...]]:
    """Vertex sets of all (not necessarily induced) subgraphs of ``g`` isomorphic to ``r``.

    Maps each vertex set to one embedding (``emb[j]`` = image of r-vertex j).
    """
    order = _bfs_order(r)
    back = {v: [w for w in r.adj[v] if order.index(w) < order.index(v)] for v in order}
    gm = g.masks
    img = [-1] * r.n
    found: dict[frozenset[int], tuple[int, ...]] = {}

    def rec(k: int, used: int) -> None:
        if k == r.n:
            key = frozenset(img)
            if key not in found:
                found[key] = tuple(img)
            return
        x = order[k]
        cand = g.full_mask & ~used
        for w in back[x]:
            cand &= gm[img[w]]
        dx = r.degree(x)
        for v in members(cand):
            if g.degree(v) < dx:
                continue
            img[x] = v
            rec(k + 1, used | (1 << v))
        img[x] = -1

    rec(0, 0)
    return found


def find_blocks(g: Graph, blueprint: GadgetBlueprint) -> list[tuple[int, ...]]:
    """Locate the block copies of a gadget graph; they must partition V(g)."""
    copies = subgraph_copies(g, blueprint.block)
    if not copies:
        raise HypothesisViolation("no copy of the block found")
    owner: dict[int, int] = {}
    blocks = sorted(copies.values(), key=lambda emb: min(emb))
    for i, emb in enumerate(blocks):
        for v in emb:
            if v in owner:
                raise HypothesisViolation("block copies overlap (ambiguous decomposition)", vertex=v,
                                          detail=f"{len(copies)} copies found")
            owner[v] = i
    if len(owner) != g.n:
        missing = next(v for v in range(g.n) if v not in owner)
        raise HypothesisViolation("block copies do not cover the graph", vertex=missing)
    return blocks


def recover_base(g: Graph, blueprint: GadgetBlueprint) -> Graph:
    """Contract every copy of the block to a single vertex.

    Base vertex ``i`` is the copy with the ``i``-th smallest least vertex.
    """
    blocks = find_blocks(g, blueprint)
    owner = {}
    for i, blk in enumerate(blocks):
        for v in blk:
            owner[v] = i
    edges = set()
    for u, v in g.edges():
        a, b = owner[u], owner[v]
        if a != b:
            edges.add((min(a, b), max(a, b)))
    return Graph.from_edges(len(blocks), edges)
