"""Named graphs used in examples, tests and the CLI."""
from __future__ import annotations

from itertools import combinations

from .graph import Graph

__all__ = [
    "complete",
    "cycle",
    "path",
    "star",
    "antihole",
    "paw",
    "heptagon_chords",
    "bound_witness_a",
    "bound_witness_b",
    "NAMED",
]


def complete(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(1, n + 1), 2))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, i % n + 1) for i in range(1, n + 1)])


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(1, n)])


def star(leaves: int) -> Graph:
    """K_{1,leaves} with the centre labelled last."""
    c = leaves + 1
    return Graph.from_edges(c, [(i, c) for i in range(1, c)])


def antihole(n: int) -> Graph:
    """Complement of the n-cycle: i and j adjacent unless they are cyclic neighbours."""
    return cycle(n).complement()


def paw() -> Graph:
    """Triangle 2-3-4 with a pendant vertex 1 on 4."""
    return Graph.from_edges(4, [(1, 4), (2, 3), (2, 4), (3, 4)])


def heptagon_chords() -> Graph:
    """7-cycle with the chords 2-4 and 4-7; a separator poset completed only by generation."""
    return Graph.from_edges(7, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 7), (2, 4), (4, 7)])


def bound_witness_a() -> Graph:
    """7 vertices, largest clique 4, max degree 4, t_max 2; top degree 3."""
    return Graph.from_edges(7, [(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 6), (3, 4), (3, 6), (4, 7)])


def bound_witness_b() -> Graph:
    """7 vertices, largest clique 4, max degree 4, t_max 3; top degree 4."""
    return Graph.from_edges(
        7,
        [(1, 2), (1, 4), (1, 6), (1, 7), (2, 3), (2, 5), (2, 6), (3, 4), (3, 5), (3, 6), (4, 5), (5, 6)],
    )


NAMED = {
    "paw": paw,
    "heptagon_chords": heptagon_chords,
    "bound_witness_a": bound_witness_a,
    "bound_witness_b": bound_witness_b,
    "k4": lambda: complete(4),
    "antihole6": lambda: antihole(6),
    "c4": lambda: cycle(4),
}
