import math

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from topominor.enumeration import Constraints, canonical_form, enumerate_class
from topominor.errors import BudgetExceeded
from topominor.graph import vertex_connectivity
from topominor.named import complete, complete_bipartite, prism
from topominor.randgen import (
    RegularSpec,
    bender_canfield_estimate,
    log_bender_canfield_estimate,
    random_regular,
)

from oracles import labelled_regular_count, to_nx


def test_n4_d3_is_k4():
    for seed in range(20):
        assert random_regular(RegularSpec(4, 3, seed)) == complete(4)


def test_n6_d3_is_k33_or_prism():
    allowed = {canonical_form(complete_bipartite(3, 3)), canonical_form(prism())}
    seen = set()
    for seed in range(200):
        seen.add(canonical_form(random_regular(RegularSpec(6, 3, seed))))
    assert seen == allowed


@pytest.mark.parametrize("n, d", [(5, 3), (7, 1), (4, 4), (3, 5), (-1, 2)])
def test_bad_specs(n, d):
    with pytest.raises(ValueError):
        RegularSpec(n, d)


def test_seed_range():
    with pytest.raises(ValueError):
        RegularSpec(6, 3, seed=2**64)
    RegularSpec(6, 3, seed=2**64 - 1)


def test_seed_determinism():
    a = random_regular(RegularSpec(20, 4, seed=12345))
    b = random_regular(RegularSpec(20, 4, seed=12345))
    assert a == b
    assert any(random_regular(RegularSpec(20, 4, seed=s)) != a for s in range(1, 5))


def _feasible(nd):
    # plain rejection stays cheap when d or its complement degree is small
    n, d = nd
    return min(d, n - 1 - d) <= 4


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8).flatmap(lambda h: st.tuples(st.just(2 * h), st.integers(0, 2 * h - 1))).filter(_feasible),
       st.integers(0, 2**64 - 1))
def test_output_is_simple_and_regular(nd, seed):
    n, d = nd
    g = random_regular(RegularSpec(n, d, seed))
    g.check_invariants()
    assert g.n == n and g.is_regular(d)
    x = to_nx(g)
    assert nx.number_of_selfloops(x) == 0 and x.number_of_edges() == n * d // 2


def test_dense_specs_use_the_complement():
    assert random_regular(RegularSpec(9, 8, 3)) == complete(9)
    assert random_regular(RegularSpec(16, 13, 7)).is_regular(13)
    # 2-regular on 6 vertices is C6 or two triangles; their complements are the prism and K3,3
    comp = {canonical_form(random_regular(RegularSpec(6, 2, s)).complement()) for s in range(100)}
    assert comp == {canonical_form(complete_bipartite(3, 3)), canonical_form(prism())}


@pytest.mark.parametrize("seed", range(10))
def test_connectivity_filter(seed):
    g = random_regular(RegularSpec(12, 3, seed, connectivity=3))
    assert vertex_connectivity(g) >= 3
    assert nx.node_connectivity(to_nx(g)) >= 3


def test_attempt_budget():
    # 3-regular graphs on 8 vertices are never 4-connected
    with pytest.raises(BudgetExceeded):
        random_regular(RegularSpec(8, 3, 0, connectivity=4), max_attempts=50)


def test_cubic_n8_coverage():
    classes = {canonical_form(g) for g in enumerate_class(8, Constraints(min_degree=3, max_degree=3))}
    assert len(classes) == 6
    seen = set()
    for seed in range(10_000):
        seen.add(canonical_form(random_regular(RegularSpec(8, 3, seed))))
        if seen == classes:
            break
    assert seen == classes


def test_estimate_d0():
    assert bender_canfield_estimate(10, 0) == pytest.approx(math.sqrt(2) * math.e)
    assert bender_canfield_estimate(10, 0) == pytest.approx(3.8442, abs=1e-4)


def test_estimate_direct_formula():
    n, d = 8, 3
    direct = math.sqrt(2) * math.exp(1 - d * d / 4) * ((d**d * n**d) / (math.e**d * math.factorial(d) ** 2)) ** (n / 2)
    assert bender_canfield_estimate(n, d) == pytest.approx(direct, rel=1e-12)


def test_estimate_parity():
    with pytest.raises(ValueError):
        bender_canfield_estimate(5, 3)


def test_estimate_against_exact_labelled_count(capsys):
    exact = labelled_regular_count(8, 3)
    assert exact == 19355
    est = bender_canfield_estimate(8, 3)
    with capsys.disabled():
        print(f"\nlabelled cubic graphs on 8 vertices: exact {exact}, estimate {est:.1f}, ratio {est / exact:.3f}")
    assert est > 0


def test_log_estimate_is_superlinear():
    vals = [log_bender_canfield_estimate(m, 3) for m in range(10, 2001, 10)]
    slopes = [b - a for a, b in zip(vals, vals[1:])]
    assert all(y > x for x, y in zip(slopes, slopes[1:]))
    assert vals[-1] / 2000 > 10 * vals[0] / 10 / 10


def test_estimate_overflow_is_inf():
    assert bender_canfield_estimate(10**6, 3) == math.inf
    assert math.isfinite(log_bender_canfield_estimate(10**6, 3))
