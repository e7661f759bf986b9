from math import comb

import networkx as nx
import pytest
from hypothesis import given, settings

from conftest import connected_graphs, from_nx, graphs, to_nx
from sepder.catalog import antihole, complete, cycle, paw, path
from sepder.derivations import Derivation, is_member, sigma_neighbourhood, theta_power, theta_sep
from sepder.errors import DisconnectedGraphError, NotAMemberError
from sepder.graph import Graph, clique_number, connectivity, t_max
from sepder.oracle import (
    default_cutoff,
    direct_module_dimension,
    find_redundant,
    graded_basis,
    minimal_degree_sequence,
    minimal_generators,
    module_dimension,
    span_dimension,
    verify_generation,
)
from sepder.poly import MultiPoly


def s_dim(n, p):
    return comb(p + n - 1, n - 1) if p >= 0 else 0


def chordal_exponents(g):
    """Exponents of a free graphic arrangement: later-neighbour counts along an elimination order."""
    order = _peo(g)
    pos = {v: k for k, v in enumerate(order)}
    return sorted(sum(1 for u in g.neighbours(v) if pos[u] > pos[v]) for v in order)


def _peo(g):
    # simplicial-vertex elimination, done independently of the package
    G = to_nx(g)
    out = []
    while G.number_of_nodes():
        v = next(v for v in sorted(G) if all(G.has_edge(a, b) for a in G[v] for b in G[v] if a < b))
        out.append(v)
        G.remove_node(v)
    return out


def test_k3_dimensions():
    assert module_dimension(complete(3), 0) == 1
    assert module_dimension(complete(3), 1) == 4


def test_path_dimension():
    assert module_dimension(path(3), 1) == 5


def test_degree_zero_is_one():
    for g in connected_graphs(1, 6):
        assert module_dimension(g, 0) == 1


def test_chordal_hilbert_function():
    for g in connected_graphs(2, 6):
        if not nx.is_chordal(to_nx(g)):
            continue
        exps = chordal_exponents(g)
        for p in range(4):
            assert module_dimension(g, p) == sum(s_dim(g.n, p - e) for e in exps)


def test_reduced_and_literal_routes_agree():
    for g in connected_graphs(2, 5):
        for p in range(4):
            assert module_dimension(g, p) == direct_module_dimension(g, p)
    for g in (antihole(6), cycle(6), paw()):
        for p in range(5):
            assert module_dimension(g, p) == direct_module_dimension(g, p)


def test_module_dimension_needs_connected():
    with pytest.raises(DisconnectedGraphError):
        module_dimension(Graph.from_edges(3, [(1, 2)]), 1)


def test_graded_basis_rows_are_members():
    g = paw()
    for p in range(4):
        gb = graded_basis(g, p)
        ders = gb.derivations()
        assert len(gb.coeff_matrix) == module_dimension(g, p)
        assert all(is_member(g, th) for th in ders)
        assert span_dimension(g, ders, p) == len(ders)


def test_span_dimension_examples():
    g = cycle(5)
    assert span_dimension(g, [theta_power(0, 5)], 2) == s_dim(5, 2)
    assert span_dimension(g, [], 3) == 0
    k3 = complete(3)
    basis = [theta_power(k, 3) for k in range(3)]
    for p in range(5):
        assert span_dimension(k3, basis, p) == module_dimension(k3, p)


def test_span_dimension_rejects_non_member():
    bad = Derivation((MultiPoly.var(3, 2), MultiPoly.zero(3), MultiPoly.zero(3)))
    with pytest.raises(NotAMemberError):
        span_dimension(complete(3), [theta_power(0, 3), bad], 1)


def test_verify_paw():
    g = paw()
    th = [theta_power(0, 4), theta_sep(g, {4}, {1}), theta_sep(g, {4}, {2, 3}), theta_sep(g, {2, 4}, {3})]
    assert verify_generation(g, th, 5).ok
    short = verify_generation(g, th[:3], 5)
    assert not short.ok and short.first_failure == 2
    row = short.table[-1]
    assert row.p == 2 and row.span_dim < row.module_dim
    assert row.span_dim == span_dimension(g, th[:3], 2)


def test_verify_antihole6():
    g = antihole(6)
    gens = [theta_power(k, 6) for k in range(4)] + [sigma_neighbourhood(g, i) for i in g.vertices]
    res = verify_generation(g, gens, 7)
    assert res.ok and [r.p for r in res.table] == list(range(8))
    assert all(r.module_dim == r.span_dim for r in res.table)


def test_verify_needs_theta0():
    g = paw()
    gens = [theta_sep(g, {4}, {1}), theta_sep(g, {4}, {2, 3}), theta_sep(g, {2, 4}, {3}), theta_power(1, 4)]
    res = verify_generation(g, gens, 5)
    assert not res.ok and res.first_failure == 0


def test_verify_cutoff_precondition():
    with pytest.raises(ValueError):
        verify_generation(antihole(6), [theta_power(0, 6)], 2)


def test_default_cutoff_env(monkeypatch):
    g = cycle(5)
    assert default_cutoff(g) == 4
    monkeypatch.setenv("SEPDER_CUTOFF", "6")
    assert default_cutoff(g) == 6


def test_minimal_degree_sequence_examples():
    assert minimal_degree_sequence(complete(4)) == [0, 1, 2, 3]
    assert minimal_degree_sequence(paw()) == [0, 1, 1, 2]
    assert minimal_degree_sequence(antihole(6)) == [0, 1, 2, 3, 3, 3, 3, 3, 3, 3]


def test_minimal_generators_generate():
    for g in (paw(), cycle(5), antihole(6)):
        gens = minimal_generators(g)
        assert sorted(th.pdeg for th in gens) == minimal_degree_sequence(g)
        assert all(is_member(g, th) for th in gens)
        assert verify_generation(g, gens).ok
        assert find_redundant(g, gens) == []


def test_find_redundant_examples():
    k3 = complete(3)
    gens = [theta_power(k, 3) for k in range(4)]
    assert find_redundant(k3, gens) == [3]
    g = paw()
    basis = [theta_power(0, 4), theta_sep(g, {4}, {1}), theta_sep(g, {4}, {2, 3}), theta_sep(g, {2, 4}, {3})]
    assert find_redundant(g, basis) == []
    dup = basis + [basis[2]]
    red = find_redundant(g, dup)
    assert 4 in red
    for i in red:
        assert verify_generation(g, dup[:i] + dup[i + 1:]).ok


@settings(max_examples=20, deadline=None)
@given(graphs(min_n=2, max_n=5))
def test_redundant_removal_keeps_generation(g):
    gens = minimal_generators(g) + [theta_power(1, g.n), theta_power(2, g.n)]
    for i in find_redundant(g, gens):
        assert verify_generation(g, gens[:i] + gens[i + 1:]).ok


@settings(max_examples=20, deadline=None)
@given(graphs(min_n=2, max_n=6))
def test_span_never_exceeds_module(g):
    gens = [theta_power(k, g.n) for k in range(3)] + [sigma_neighbourhood(g, v) for v in g.vertices]
    for p in range(4):
        assert span_dimension(g, gens, p) <= module_dimension(g, p)


@settings(max_examples=15, deadline=None)
@given(graphs(min_n=2, max_n=6))
def test_sequence_invariant_under_relabeling(g):
    perm = {v: g.n + 1 - v for v in g.vertices}
    h = g.relabel(perm)
    assert minimal_degree_sequence(g) == minimal_degree_sequence(h)
    for p in range(4):
        assert module_dimension(g, p) == module_dimension(h, p)


def test_low_degrees_match_braid():
    for g in connected_graphs(2, 6):
        k = connectivity(g)
        kl = complete(g.n)
        for j in range(k):
            assert module_dimension(g, j) == module_dimension(kl, j)


def test_bounds_hold_as_oracle_facts():
    for g in connected_graphs(2, 6):
        d = minimal_degree_sequence(g)[-1]
        assert max(clique_number(g) - 1, t_max(g)) <= d <= g.max_degree()


def test_isomorphic_relabelings_share_sequences(rng):
    for g in rng.sample(connected_graphs(5, 6), 10):
        G = to_nx(g)
        perm = list(G.nodes())
        rng.shuffle(perm)
        h = from_nx(nx.relabel_nodes(G, dict(zip(sorted(G.nodes()), perm))))
        assert minimal_degree_sequence(g) == minimal_degree_sequence(h)
