from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings

from conftest import connected_graphs, graphs, to_nx
from sepder.catalog import antihole, complete, cycle, paw, path
from sepder.errors import DisconnectedGraphError, LoopEdgeError, MalformedLineError, ParseError, VertexRangeError
from sepder.graph import (
    Graph,
    clique_number,
    connected_components,
    connectivity,
    is_chordal,
    minimal_separators,
    parse_graph,
    render_edge_list,
    t_max,
    t_min,
    to_graph6,
)

BANNER = Graph.from_edges(5, [(1, 2), (2, 3), (2, 4), (3, 5), (4, 5)])


def brute_minimal_separators(g: Graph) -> set:
    """Sets that are inclusion-minimal (a,b)-separators for some non-adjacent pair."""
    G = to_nx(g)
    found = set()
    verts = list(g.vertices)
    for a, b in combinations(verts, 2):
        if G.has_edge(a, b):
            continue
        seps = []
        rest = [v for v in verts if v not in (a, b)]
        for k in range(len(rest) + 1):
            for t in combinations(rest, k):
                H = G.subgraph(v for v in verts if v not in t)
                if not nx.has_path(H, a, b):
                    seps.append(frozenset(t))
        for t in seps:
            if not any(s < t for s in seps):
                found.add(t)
    return found


def test_parse_single_edge():
    g = parse_graph("n 2\n1 2")
    assert g == Graph.from_edges(2, [(1, 2)])


def test_parse_paw_edge_list():
    g = parse_graph("n 4\n1 4\n2 4\n3 4\n2 3")
    assert g == paw()
    assert [s.t_set for s in minimal_separators(g)] == [frozenset({4})]


def test_parse_deduplicates():
    g = parse_graph("n 3\n1 2\n1 2")
    assert g.n == 3 and g.sorted_edges() == [(1, 2)]


def test_parse_comments_and_reversed_pairs():
    g = parse_graph("# header comment\nn 3\n2 1  # reversed\n\n3 2\n")
    assert g.sorted_edges() == [(1, 2), (2, 3)]


@pytest.mark.parametrize("text,exc", [
    ("n 3\n1 2 3", MalformedLineError),
    ("n 3\n1 x", MalformedLineError),
    ("3\n1 2", MalformedLineError),
    ("", MalformedLineError),
    ("n 3\n1 4", VertexRangeError),
    ("n 3\n0 1", VertexRangeError),
    ("n 3\n2 2", LoopEdgeError),
])
def test_parse_errors_are_distinct(text, exc):
    with pytest.raises(exc):
        parse_graph(text)
    assert issubclass(exc, ParseError)


def test_graph6_matches_networkx():
    for g in connected_graphs(2, 5):
        encoded = to_graph6(g)
        G = nx.from_graph6_bytes(encoded.encode())
        assert sorted((a + 1, b + 1) for a, b in G.edges()) == g.sorted_edges()
        assert parse_graph(encoded, "graph6") == g


def test_graph6_header_prefix():
    g = cycle(5)
    assert parse_graph(">>graph6<<" + to_graph6(g) + "\n", "graph6") == g


@given(graphs(min_n=1, max_n=8, connected=False))
def test_edge_list_round_trip(g):
    assert parse_graph(render_edge_list(g)) == g


@given(graphs(min_n=1, max_n=10, connected=False))
def test_graph6_round_trip(g):
    assert parse_graph(to_graph6(g), "graph6") == g


def test_components_examples():
    assert connected_components(paw(), {4}) == [frozenset({1}), frozenset({2, 3})]
    assert connected_components(cycle(5), ()) == [frozenset(range(1, 6))]
    assert connected_components(cycle(5), {1, 3}) == [frozenset({2}), frozenset({4, 5})]
    with pytest.raises(ValueError):
        connected_components(cycle(5), {6})


def test_connectivity_examples():
    assert connectivity(complete(5)) == 4
    assert connectivity(cycle(6)) == 2
    assert connectivity(paw()) == 1


def test_connectivity_rejects_disconnected():
    with pytest.raises(DisconnectedGraphError):
        connectivity(Graph.from_edges(3, [(1, 2)]))
    with pytest.raises(DisconnectedGraphError):
        minimal_separators(Graph.from_edges(4, [(1, 2), (3, 4)]))


def test_connectivity_matches_networkx():
    for g in connected_graphs(2, 6):
        assert connectivity(g) == nx.node_connectivity(to_nx(g))


def test_antihole_separators_are_neighbourhoods():
    g = antihole(6)
    seps = minimal_separators(g)
    assert len(seps) == 6
    assert {s.t_set for s in seps} == {g.neighbours(v) for v in g.vertices}
    assert all(len(s.t_set) == 3 for s in seps)


def test_banner_separator_facts():
    ts = {s.t_set for s in minimal_separators(BANNER)}
    assert {frozenset({2}), frozenset({3, 4}), frozenset({2, 5})} <= ts
    assert ts == brute_minimal_separators(BANNER)


def test_separators_sorted_and_json():
    seps = minimal_separators(BANNER)
    keys = [(len(s.t_set), sorted(s.t_set)) for s in seps]
    assert keys == sorted(keys)
    js = seps[0].to_json()
    assert set(js) == {"T", "components", "minimal"} and js["minimal"] is True


def test_separators_match_brute_force_small():
    for g in connected_graphs(2, 6):
        assert {s.t_set for s in minimal_separators(g)} == brute_minimal_separators(g)


def test_separators_match_brute_force_seven_vertices(rng):
    graphs7 = connected_graphs(7, 7)
    for g in rng.sample(graphs7, 60):
        assert {s.t_set for s in minimal_separators(g)} == brute_minimal_separators(g)


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=2, max_n=7))
def test_separator_invariants(g):
    for sep in minimal_separators(g):
        comps = sep.components
        assert frozenset().union(*comps) == frozenset(g.vertices) - sep.t_set
        assert sum(len(c) for c in comps) == g.n - len(sep.t_set)
        assert len(sep.full_components(g)) >= 2
        # dropping any vertex of T reconnects two full components
        full = sep.full_components(g)
        for t in sep.t_set:
            merged = connected_components(g, sep.t_set - {t})
            assert any(full[0] <= c and full[1] <= c for c in merged)
    if g.is_complete():
        assert connectivity(g) == g.n - 1
        assert t_max(g) == 0 and t_min(g) == 0
    else:
        assert connectivity(g) == min(len(s.t_set) for s in minimal_separators(g)) == t_min(g)


def test_clique_number():
    assert clique_number(complete(6)) == 6
    assert clique_number(cycle(5)) == 2
    assert clique_number(paw()) == 3
    for g in connected_graphs(1, 6):
        G = to_nx(g)
        assert clique_number(g) == max(len(c) for c in nx.find_cliques(G))


def _is_peo(g: Graph, order) -> bool:
    pos = {v: k for k, v in enumerate(order)}
    for v in order:
        later = [u for u in g.neighbours(v) if pos[u] > pos[v]]
        if any(not g.has_edge(a, b) for a, b in combinations(later, 2)):
            return False
    return True


def test_chordal_examples():
    ok, peo = is_chordal(paw())
    assert ok and _is_peo(paw(), peo)
    assert is_chordal(cycle(5)) == (False, None)
    ok, peo = is_chordal(path(6))
    assert ok and _is_peo(path(6), peo)


def test_chordal_matches_networkx():
    for g in connected_graphs(1, 6):
        ok, peo = is_chordal(g)
        assert ok == nx.is_chordal(to_nx(g))
        if ok:
            assert sorted(peo) == list(g.vertices) and _is_peo(g, peo)


def test_graph_rejects_bad_edges():
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(1, 1)])
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(1, 4)])


def test_degrees():
    g = paw()
    assert g.degree(4) == 3 and g.max_degree() == 3 and g.min_degree() == 1
    assert g.neighbours(2) == frozenset({3, 4})
