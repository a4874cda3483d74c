import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from topominor.graph import Graph
from topominor.graph6 import Graph6Error, decode, emit_graph6, encode, parse_graph6, read_graph6_lines
from topominor.named import complete, cycle, path

from oracles import to_nx


def test_fixed_vectors():
    assert emit_graph6(complete(4)) == "C~"
    assert emit_graph6(path(2)) == "A_"
    assert emit_graph6(Graph.empty(0)) == "?"
    assert emit_graph6(Graph.empty(1)) == "@"


def test_header_and_whitespace_accepted():
    assert parse_graph6(">>graph6<<C~\n") == complete(4)
    assert read_graph6_lines(["C~", "", "A_"]) == [complete(4), path(2)]


@pytest.mark.parametrize(
    "bad, why",
    [
        ("", "empty"),
        ("C~~", "trailing"),
        ("D~", "truncated"),
        ("A`", "padding"),
        ("C\x7f", "outside"),
        ("~??", "truncated size"),
        ("~~??????", "8-byte"),
    ],
)
def test_malformed_inputs(bad, why):
    with pytest.raises(Graph6Error):
        decode(bad)


def test_extended_form_round_trip_and_opt_out():
    g = cycle(100)
    data = encode(g)
    assert data[:1] == b"~"
    assert decode(data) == g
    assert data == nx.to_graph6_bytes(to_nx(g), header=False).strip()
    with pytest.raises(Graph6Error):
        encode(g, extended=False)
    with pytest.raises(Graph6Error):
        decode(data, extended=False)


def test_non_canonical_size_prefix_rejected():
    with pytest.raises(Graph6Error):
        decode(b"~??C~")


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 70).flatmap(
    lambda n: st.tuples(st.just(n), st.sets(st.tuples(st.integers(0, max(n - 1, 0)), st.integers(0, max(n - 1, 0))), max_size=80))
))
def test_round_trip_matches_networkx(case):
    n, pairs = case
    g = Graph.from_edges(n, [(u, v) for u, v in pairs if u != v])
    data = encode(g)
    assert decode(data) == g
    assert data == nx.to_graph6_bytes(to_nx(g), header=False).strip()
