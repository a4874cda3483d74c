import json
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from topominor.containment import (
    CertificateError,
    MinorModel,
    SubdivisionEmbedding,
    connected_sets,
    contains_minor,
    contains_subdivision,
    disjoint_connected_subgraphs,
    verify_disjoint_connected,
    verify_minor_model,
    verify_subdivision,
)
from topominor.enumeration import enumerate_unlabelled
from topominor.errors import BudgetExceeded
from topominor.graph import Graph, contract_matching, is_connected
from topominor.named import (
    complete,
    complete_bipartite,
    cube,
    cube_apex,
    cycle,
    octahedron,
    path,
    petersen,
    prism,
    star,
)

from oracles import brute_minor, to_nx
from test_graph import graphs


def test_petersen_has_k5_minor_by_matching_contraction():
    g = petersen()
    spokes = [(i, i + 5) for i in range(5)]
    assert contract_matching(g, spokes) == complete(5)
    model = contains_minor(g, complete(5))
    assert model is not None
    verify_minor_model(g, complete(5), model)


def test_minor_examples():
    assert contains_minor(cycle(4), complete(4)) is None
    g = petersen()
    model = contains_minor(g, g)
    assert model is not None and all(len(b) == 1 for b in model.branch_sets)


def test_subdivision_examples():
    assert contains_subdivision(petersen(), complete(5)) is None
    emb = contains_subdivision(petersen(), complete(4))
    assert emb is not None
    verify_subdivision(petersen(), complete(4), emb)
    assert contains_minor(petersen(), complete(4)) is not None


def test_octahedron_in_cube_plus_apex():
    g, h = cube_apex(), octahedron()
    assert contains_subdivision(g, h, budget=None) is None
    assert contains_minor(g, h, budget=None) is not None


def test_k33_subdivisions():
    assert contains_subdivision(petersen(), complete_bipartite(3, 3)) is not None
    assert contains_subdivision(cube(), complete_bipartite(3, 3)) is None
    assert contains_minor(cube(), complete_bipartite(3, 3)) is None
    assert contains_subdivision(prism(), complete_bipartite(3, 3)) is None


def test_empty_and_trivial_patterns():
    assert contains_minor(cycle(5), Graph.empty(0)) is not None
    assert contains_subdivision(cycle(5), Graph.empty(3)) is not None
    assert contains_subdivision(cycle(3), Graph.empty(4)) is None
    assert contains_minor(path(3), complete(2)) is not None


def test_budget_is_not_absent():
    with pytest.raises(BudgetExceeded):
        contains_subdivision(complete(6), complete(5), budget=2)
    with pytest.raises(BudgetExceeded):
        contains_minor(petersen(), complete(5), budget=2)


def test_certificate_json_round_trip():
    m = contains_minor(petersen(), complete(5))
    assert MinorModel.from_json(json.loads(json.dumps(m.to_json()))) == m
    s = contains_subdivision(petersen(), complete(4))
    assert SubdivisionEmbedding.from_json(json.loads(json.dumps(s.to_json()))) == s


def test_verifiers_reject_bad_certificates():
    with pytest.raises(CertificateError):
        verify_minor_model(cycle(4), complete(4), MinorModel(((0,), (1,), (2,), (3,))))
    with pytest.raises(CertificateError):
        verify_minor_model(path(3), complete(2), MinorModel(((0, 2), (1,))))
    bad = SubdivisionEmbedding((0, 1, 2), ((0, 1), (1, 2), (0, 1, 2)))
    with pytest.raises(CertificateError):
        verify_subdivision(cycle(4), complete(3), bad)


def test_connected_sets_matches_brute_force():
    g = petersen()
    found = sorted(connected_sets(g, 0, g.full_mask, 4))
    brute = []
    x = to_nx(g)
    for k in range(1, 5):
        for s in combinations(range(10), k):
            if 0 in s and nx.is_connected(x.subgraph(s)):
                brute.append(sum(1 << v for v in s))
    assert found == sorted(brute)


MAX_DEG3_PATTERNS = [
    h for n in range(3, 7) for h in enumerate_unlabelled(n)
    if h.max_degree <= 3 and is_connected(h) and h.m >= 3
]


@pytest.mark.parametrize("h", MAX_DEG3_PATTERNS, ids=lambda h: f"n{h.n}m{h.m}")
def test_subdivision_equals_minor_for_max_degree_three(h):
    for n in range(0, 8):
        for g in enumerate_unlabelled(n):
            m = contains_minor(g, h, budget=None)
            s = contains_subdivision(g, h, budget=None)
            assert (m is None) == (s is None), g.edges()


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=6), st.sampled_from([complete(4), star(3), cycle(4), complete_bipartite(2, 3), complete(3)]))
def test_minor_matches_brute_force(g, h):
    assert (contains_minor(g, h, budget=None) is not None) == brute_minor(g, h)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=8), st.sampled_from([complete(4), complete(5), octahedron(), cycle(5), star(4)]))
def test_subdivision_implies_minor(g, h):
    s = contains_subdivision(g, h, budget=None)
    if s is not None:
        verify_subdivision(g, h, s)
        assert contains_minor(g, h, budget=None) is not None


def test_disjoint_connected_examples():
    k6 = complete(6)
    out = disjoint_connected_subgraphs(k6, [[0, 1], [2, 3]])
    assert out is not None
    verify_disjoint_connected(k6, [[0, 1], [2, 3]], out)
    single = disjoint_connected_subgraphs(cycle(5), [[0], [2], [4]])
    assert [sorted(t) for t in single] == [[0], [2], [4]]
    triangles = complete(3).disjoint_union(complete(3))
    assert disjoint_connected_subgraphs(triangles, [[0, 3]]) is None


def test_disjoint_connected_crossing_pairs_on_cycle():
    # on a cycle, pairs {0,2} and {1,3} interleave and cannot be linked disjointly
    assert disjoint_connected_subgraphs(cycle(4), [[0, 2], [1, 3]]) is None
    assert disjoint_connected_subgraphs(cycle(4), [[0, 1], [2, 3]]) is not None


@settings(max_examples=50, deadline=None)
@given(graphs(max_n=7), st.data())
def test_disjoint_connected_against_brute_force(g, data):
    if g.n < 4:
        return
    verts = data.draw(st.permutations(range(g.n)))
    parts = [sorted(verts[0:2]), sorted(verts[2:4])]
    got = disjoint_connected_subgraphs(g, parts, budget=None)
    # brute force: give every other vertex a label in {none, part 0, part 1}
    x = to_nx(g)
    rest = verts[4:]
    from itertools import product

    expected = False
    for labels in product(range(3), repeat=len(rest)):
        sets = [set(parts[0]), set(parts[1])]
        for v, lab in zip(rest, labels):
            if lab:
                sets[lab - 1].add(v)
        if all(nx.is_connected(x.subgraph(s)) for s in sets):
            expected = True
            break
    assert (got is not None) == expected
