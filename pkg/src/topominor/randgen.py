"""Random simple d-regular graphs (pairing model with rejection) and the asymptotic labelled count."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .errors import BudgetExceeded
from .graph import Graph, vertex_connectivity

DEFAULT_ATTEMPTS = 100_000


@dataclass(frozen=True)
class RegularSpec:
    n: int
    d: int
    seed: int = 0
    connectivity: int = 0  # reject samples below this vertex connectivity

    def __post_init__(self):
        if self.n < 0 or self.d < 0:
            raise ValueError("n and d must be non-negative")
        if (self.n * self.d) % 2:
            raise ValueError(f"n*d must be even (n={self.n}, d={self.d})")
        if self.n and self.d >= self.n:
            raise ValueError(f"d={self.d} must be smaller than n={self.n}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")


def _pairing(n: int, d: int, rng: random.Random) -> list[tuple[int, int]] | None:
    stubs = [v for v in range(n) for _ in range(d)]
    rng.shuffle(stubs)
    seen = set()
    edges = []
    for i in range(0, len(stubs), 2):
        u, v = stubs[i], stubs[i + 1]
        if u == v:
            return None
        e = (min(u, v), max(u, v))
        if e in seen:
            return None
        seen.add(e)
        edges.append(e)
    return edges


def random_regular(spec: RegularSpec, max_attempts: int = DEFAULT_ATTEMPTS) -> Graph:
    """Uniform labelled simple d-regular graph, optionally conditioned on connectivity.

    Draws uniform pairings of the n*d stubs and throws away any with a loop or
    a repeated pair, which leaves the simple graphs equally likely.  Acceptance
    decays like exp(-(d*d-1)/4), so for d > (n-1)/2 the (n-1-d)-regular
    complement is sampled instead; complementation is a bijection and keeps
    the distribution uniform.
    """
    rng = random.Random(spec.seed)
    flip = spec.n and spec.d > (spec.n - 1) / 2
    d = spec.n - 1 - spec.d if flip else spec.d
    for _ in range(max_attempts):
        edges = _pairing(spec.n, d, rng)
        if edges is None:
            continue
        g = Graph.from_edges(spec.n, edges)
        if flip:
            g = g.complement()
        if spec.connectivity and vertex_connectivity(g) < spec.connectivity:
            continue
        return g
    raise BudgetExceeded("random_regular rejection sampling", max_attempts)


def log_bender_canfield_estimate(n: int, d: int) -> float:
    """Natural log of sqrt(2) e^(1-d^2/4) (d^d n^d / (e^d (d!)^2))^(n/2)."""
    if n < 0 or d < 0:
        raise ValueError("n and d must be non-negative")
    if (n * d) % 2:
        raise ValueError(f"n*d must be even (n={n}, d={d})")
    head = 0.5 * math.log(2) + 1 - d * d / 4
    if d == 0:
        return head
    if n == 0:
        return head
    inner = d * math.log(d) + d * math.log(n) - d - 2 * math.lgamma(d + 1)
    return head + n / 2 * inner


def bender_canfield_estimate(n: int, d: int) -> float:
    """Asymptotic number of labelled d-regular graphs on n vertices (may overflow to inf)."""
    try:
        return math.exp(log_bender_canfield_estimate(n, d))
    except OverflowError:
        return math.inf
