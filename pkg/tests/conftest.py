import random
from functools import lru_cache

import networkx as nx
import pytest
from hypothesis import strategies as st

from sepder.graph import Graph


def from_nx(G) -> Graph:
    nodes = sorted(G.nodes())
    idx = {v: k + 1 for k, v in enumerate(nodes)}
    return Graph.from_edges(len(nodes), [(idx[a], idx[b]) for a, b in G.edges()])


def to_nx(g: Graph):
    G = nx.Graph()
    G.add_nodes_from(g.vertices)
    G.add_edges_from(g.edges)
    return G


@lru_cache(maxsize=None)
def connected_graphs(lo: int, hi: int) -> tuple:
    """All connected graphs with lo <= l <= hi, up to isomorphism (atlas order)."""
    out = []
    for G in nx.graph_atlas_g():
        n = G.number_of_nodes()
        if lo <= n <= hi and nx.is_connected(G):
            out.append(from_nx(G))
    return tuple(out)


def random_connected(n: int, p: float, rng: random.Random) -> Graph:
    while True:
        edges = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if rng.random() < p]
        g = Graph.from_edges(n, edges)
        if g.is_connected():
            return g


@st.composite
def graphs(draw, min_n=2, max_n=6, connected=True):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    edges = set()
    if pairs:
        edges.update(draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))))
    if connected:
        # a random spanning tree keeps the graph connected
        order = draw(st.permutations(list(range(1, n + 1))))
        for k in range(1, n):
            parent = order[draw(st.integers(0, k - 1))]
            a, b = sorted((order[k], parent))
            edges.add((a, b))
    return Graph.from_edges(n, edges)


@pytest.fixture
def rng():
    return random.Random(20240601)


# lines printed by the acceptance suite, repeated at the end of the run
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)
