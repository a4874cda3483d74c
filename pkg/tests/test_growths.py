import json

import pytest
from hypothesis import given, settings

from topominor.containment import contains_minor
from topominor.enumeration import Constraints, canonical_form, enumerate_class, enumerate_unlabelled
from topominor.graph import Graph
from topominor.growths import (
    FIRST,
    SECOND,
    GrowthStep,
    apply_reduction,
    enumerate_expansions,
    find_reduction,
    first_kind_growth,
    growth_bound,
    low_degree_set,
    validate_step,
)
from topominor.named import complete, complete_bipartite, cycle, path

from oracles import to_nx
from test_graph import graphs


def test_find_reduction_examples():
    # every vertex of C4 has a low-degree neighbour, so all of S is adjacent type
    step = find_reduction(cycle(4), 2)
    assert step.kind == SECOND and step.pairs == ((0, 1), (2, 3))
    # the leaves of K_{2,3} have no neighbour in S and pair off as twins
    step = find_reduction(complete_bipartite(2, 3), 2)
    assert step.kind == FIRST and step.k == 1
    step = find_reduction(complete(4), 3)
    assert step.kind == SECOND and step.k == 2
    assert find_reduction(complete(5), 3) is None


def test_apply_reduction_examples():
    assert canonical_form(apply_reduction(cycle(4), GrowthStep(FIRST, ((0, 2),)))) == canonical_form(path(3))
    assert apply_reduction(complete(4), GrowthStep(SECOND, ((0, 1), (2, 3)), 3)) == complete(2)
    k23 = complete_bipartite(2, 3)
    assert canonical_form(apply_reduction(k23, GrowthStep(FIRST, ((2, 3),)))) == canonical_form(complete_bipartite(2, 2))


@pytest.mark.parametrize(
    "g, step",
    [
        (cycle(4), GrowthStep(FIRST, ((0, 1),))),
        (cycle(5), GrowthStep(FIRST, ((0, 2),))),
        (cycle(4), GrowthStep(SECOND, ((0, 2),), 2)),
        (complete(5), GrowthStep(SECOND, ((0, 1),), 3)),
        (complete(4), GrowthStep(SECOND, ((0, 1), (1, 2)), 3)),
        (complete(4), GrowthStep(SECOND, ((0, 1),), None)),
        (cycle(4), GrowthStep("third", ((0, 2),))),
    ],
)
def test_invalid_steps_rejected(g, step):
    with pytest.raises(ValueError):
        apply_reduction(g, step)


def test_step_json_round_trip():
    s = GrowthStep(SECOND, ((0, 1), (2, 3)), 3)
    assert GrowthStep.from_json(json.loads(json.dumps(s.to_json()))) == s


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=8))
def test_found_reduction_is_valid(g):
    step = find_reduction(g, 3)
    if step is None:
        assert low_degree_set(g, 3) == []
        return
    validate_step(g, step)
    assert apply_reduction(g, step).n == g.n - step.k


def test_expansion_k0_is_identity():
    assert [canonical_form(x) for x in enumerate_expansions(cycle(5), 0, 3)] == [canonical_form(cycle(5))]


def test_expansion_k2_first_kind_only():
    out = enumerate_expansions(complete(2), 1, 2, kinds=[FIRST])
    assert [canonical_form(x) for x in out] == [canonical_form(path(3))]


def test_expansion_triangle_second_kind():
    out = enumerate_expansions(complete(3), 1, 3, kinds=[SECOND])
    forms = {canonical_form(x) for x in out}
    k4_minus = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)])
    assert canonical_form(k4_minus) in forms
    assert canonical_form(cycle(4)) in forms
    assert len(out) <= growth_bound(3, 1, 3)
    # brute force: every 4-vertex graph with a contractible edge of low degree giving K3
    brute = set()
    for g in enumerate_unlabelled(4):
        for u, v in g.edges():
            if g.degree(u) <= 3 and g.degree(v) <= 3:
                if canonical_form(apply_reduction(g, GrowthStep(SECOND, ((u, v),), 3))) == canonical_form(complete(3)):
                    brute.add(canonical_form(g))
    assert forms == brute


@pytest.mark.parametrize("m", [3, 4])
def test_expansions_match_brute_force(m):
    """Every (m+1)-vertex graph that reduces to J by one valid step, and nothing else."""
    d = 3
    for j in enumerate_unlabelled(m):
        ours = {canonical_form(x) for x in enumerate_expansions(j, 1, d)}
        target = canonical_form(j)
        brute = set()
        for g in enumerate_unlabelled(m + 1):
            steps = [GrowthStep(SECOND, ((u, v),), d) for u, v in g.edges() if g.degree(u) <= d and g.degree(v) <= d]
            steps += [GrowthStep(FIRST, ((u, v),)) for u in range(g.n) for v in range(g.n)
                      if u != v and not g.has_edge(u, v) and g.masks[u] == g.masks[v]]
            if any(canonical_form(apply_reduction(g, s)) == target for s in steps):
                brute.add(canonical_form(g))
        assert ours == brute


def test_inverse_property():
    for m in range(0, 5):
        for j in enumerate_unlabelled(m):
            for k in (1, 2):
                for g, step in enumerate_expansions(j, k, 3, with_steps=True):
                    assert apply_reduction(g, step) == j


def test_first_kind_growth_builds_twins():
    g, step = first_kind_growth(path(3), [0, 1])
    for u, v in step.pairs:
        assert not g.has_edge(u, v) and g.masks[u] == g.masks[v]


def test_bound_holds_small():
    for m in range(0, 6):
        for j in enumerate_unlabelled(m):
            for k in (1, 2):
                assert len(enumerate_expansions(j, k, 3)) <= growth_bound(m, k, 3)


def _s_is_empty_nx(g, d):
    x = to_nx(g)
    low = {v for v in x if x.degree(v) <= d}
    for v in low:
        if any(u in low for u in x[v]):
            return False
        if any(u != v and set(x[u]) == set(x[v]) for u in low):
            return False
    return True


def test_reduction_progress_on_k4_minor_free_graphs(capsys):
    """Coverage of find_reduction at d = 3 over K4-minor-free graphs on 2..7 vertices.

    d = 3 is a chosen value, not one derived for this class, so the check reports the
    graphs it misses rather than requiring full coverage.
    """
    total, misses = 0, []
    for n in range(2, 8):
        for g in enumerate_class(n, Constraints(forbidden_minor=complete(4))):
            total += 1
            if find_reduction(g, 3) is None:
                misses.append(g)
    for g in misses:
        # a miss must be genuine: no low-degree vertex has a low-degree neighbour or twin
        assert _s_is_empty_nx(g, 3)
    with capsys.disabled():
        print(f"\nreduction coverage at d=3: {total - len(misses)}/{total}")
        for g in misses:
            print("  no reduction:", canonical_form(g), g.edges())
    assert len(misses) <= total // 100
