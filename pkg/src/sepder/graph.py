"""Simple undirected graphs on vertices 1..n, plus the separator machinery.

Vertex sets are handed out as ``frozenset`` of 1-based labels. Internally the
hot loops work on integer bitmasks (bit ``v`` set <=> vertex ``v`` present);
the ``*_mask`` helpers are used by the poset module as well.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator

from .errors import (
    DisconnectedGraphError,
    LoopEdgeError,
    MalformedLineError,
    VertexRangeError,
)

__all__ = [
    "Graph",
    "Separator",
    "parse_graph",
    "render_edge_list",
    "to_graph6",
    "connected_components",
    "connectivity",
    "minimal_separators",
    "clique_number",
    "is_chordal",
    "t_max",
    "t_min",
    "mask_of",
    "set_of",
    "components_mask",
    "separator_masks",
]


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def set_of(mask: int) -> frozenset[int]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return frozenset(out)


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a graph needs at least one vertex")
        norm = set()
        for e in self.edges:
            i, j = e
            if i == j:
                raise LoopEdgeError(f"loop at vertex {i}")
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise VertexRangeError(f"edge {i} {j} outside 1..{self.n}")
            norm.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        return cls(n, frozenset(tuple(e) for e in edges))

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def adj(self) -> tuple[int, ...]:
        """Neighbourhood bitmask of every vertex, indexed by label (slot 0 unused)."""
        a = [0] * (self.n + 1)
        for i, j in self.edges:
            a[i] |= 1 << j
            a[j] |= 1 << i
        return tuple(a)

    @cached_property
    def all_mask(self) -> int:
        return mask_of(self.vertices)

    def neighbours(self, v: int) -> frozenset[int]:
        self._check_vertex(v)
        return set_of(self.adj[v])

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return bin(self.adj[v]).count("1")

    def max_degree(self) -> int:
        return max(self.degree(v) for v in self.vertices)

    def min_degree(self) -> int:
        return min(self.degree(v) for v in self.vertices)

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def is_complete(self) -> bool:
        return len(self.edges) == self.n * (self.n - 1) // 2

    def is_connected(self) -> bool:
        return len(components_mask(self, 0)) <= 1

    def is_tree(self) -> bool:
        return self.is_connected() and len(self.edges) == self.n - 1

    def neighbourhood_mask(self, mask: int) -> int:
        """Outer boundary N(C) of a vertex set given as a mask."""
        out = 0
        for v in _bits(mask):
            out |= self.adj[v]
        return out & ~mask

    def outer_boundary(self, vertices: Iterable[int]) -> frozenset[int]:
        return set_of(self.neighbourhood_mask(mask_of(vertices)))

    def relabel(self, perm: dict[int, int]) -> "Graph":
        return Graph.from_edges(self.n, ((perm[i], perm[j]) for i, j in self.edges))

    def complement(self) -> "Graph":
        es = [(i, j) for i, j in combinations(self.vertices, 2) if (i, j) not in self.edges]
        return Graph.from_edges(self.n, es)

    def _check_vertex(self, v: int) -> None:
        if not (1 <= v <= self.n):
            raise VertexRangeError(f"vertex {v} outside 1..{self.n}")

    def require_connected(self) -> None:
        if not self.is_connected():
            raise DisconnectedGraphError("graph is not connected")

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.sorted_edges()})"


@dataclass(frozen=True)
class Separator:
    t_set: frozenset
    components: tuple  # tuple of frozensets, ordered by smallest element
    is_minimal: bool

    def full_components(self, g: Graph) -> list[frozenset]:
        return [c for c in self.components if g.outer_boundary(c) == self.t_set]

    def to_json(self) -> dict:
        return {
            "T": sorted(self.t_set),
            "components": [sorted(c) for c in self.components],
            "minimal": self.is_minimal,
        }


# -- parsing -----------------------------------------------------------------


def parse_graph(text: str, format: str = "edge_list") -> Graph:
    if format == "edge_list":
        return _parse_edge_list(text)
    if format == "graph6":
        return _parse_graph6(text)
    raise ValueError(f"unknown graph format {format!r}")


def _parse_edge_list(text: str) -> Graph:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    numbered = [(k + 1, ln) for k, ln in enumerate(lines) if ln]
    if not numbered:
        raise MalformedLineError("empty input; expected header 'n <count>'")
    lineno, header = numbered[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] != "n" or not parts[1].isdigit() or int(parts[1]) < 1:
        raise MalformedLineError(f"line {lineno}: expected header 'n <count>', got {header!r}")
    n = int(parts[1])
    edges = set()
    for lineno, ln in numbered[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise MalformedLineError(f"line {lineno}: expected 'i j', got {ln!r}")
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise MalformedLineError(f"line {lineno}: non-integer vertex in {ln!r}") from None
        if not (1 <= i <= n and 1 <= j <= n):
            raise VertexRangeError(f"line {lineno}: vertex out of range 1..{n} in {ln!r}")
        if i == j:
            raise LoopEdgeError(f"line {lineno}: loop edge at vertex {i}")
        edges.add((min(i, j), max(i, j)))
    return Graph(n, frozenset(edges))


def render_edge_list(g: Graph) -> str:
    lines = [f"n {g.n}"] + [f"{i} {j}" for i, j in g.sorted_edges()]
    return "\n".join(lines) + "\n"


# graph6: N(n) header followed by the upper triangle, column-major, 6 bits per byte.


def _parse_graph6(text: str) -> Graph:
    data = text.strip()
    if data.startswith(">>graph6<<"):
        data = data[len(">>graph6<<"):]
    if not data:
        raise MalformedLineError("empty graph6 string")
    vals = [ord(ch) - 63 for ch in data]
    if any(v < 0 or v > 63 for v in vals):
        raise MalformedLineError(f"invalid graph6 character in {data!r}")
    if vals[0] != 63:
        n, body = vals[0], vals[1:]
    elif len(vals) >= 4 and vals[1] != 63:
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        body = vals[4:]
    else:
        raise MalformedLineError("graph6 inputs with more than 258047 vertices are not supported")
    if n < 1:
        raise MalformedLineError("graph6 string encodes an empty graph")
    need = n * (n - 1) // 2
    if len(body) * 6 < need or len(body) != (need + 5) // 6:
        raise MalformedLineError(f"graph6 body has wrong length for n={n}")
    bits = []
    for v in body:
        bits.extend((v >> (5 - k)) & 1 for k in range(6))
    edges = set()
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.add((i + 1, j + 1))
            k += 1
    return Graph(n, frozenset(edges))


def to_graph6(g: Graph) -> str:
    n = g.n
    if n < 63:
        out = [n]
    else:
        out = [63, (n >> 12) & 63, (n >> 6) & 63, n & 63]
    bits = [1 if (i + 1, j + 1) in g.edges else 0 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k:k + 6]:
            v = (v << 1) | b
        out.append(v)
    return "".join(chr(v + 63) for v in out)


# -- components and separators -----------------------------------------------


def components_mask(g: Graph, removed: int) -> list[int]:
    """Connected components of G minus ``removed``, as masks ordered by least vertex."""
    rest = g.all_mask & ~removed
    comps = []
    while rest:
        low = rest & -rest
        comp = low
        frontier = low
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= g.adj[v]
            nxt &= rest & ~comp
            comp |= nxt
            frontier = nxt
        comps.append(comp)
        rest &= ~comp
    return comps


def connected_components(g: Graph, removed: Iterable[int] = ()) -> list[frozenset]:
    removed = frozenset(removed)
    for v in removed:
        g._check_vertex(v)
    return [set_of(c) for c in components_mask(g, mask_of(removed))]


def _is_minimal_mask(g: Graph, t: int) -> tuple[bool, list[int]]:
    comps = components_mask(g, t)
    full = sum(1 for c in comps if g.neighbourhood_mask(c) == t)
    return full >= 2, comps


def minimal_separators(g: Graph) -> list[Separator]:
    """All minimal separators, sorted by size then lexicographically.

    Candidates are the boundaries N(C) of connected vertex sets C; a candidate
    is kept when at least two components of G minus it are full (have the whole
    candidate as boundary).
    """
    g.require_connected()
    seen: dict[int, list[int]] = {}
    for t in _separator_candidates(g):
        ok, comps = _is_minimal_mask(g, t)
        if ok:
            seen[t] = comps
    out = [Separator(set_of(t), tuple(set_of(c) for c in comps), True) for t, comps in seen.items()]
    out.sort(key=lambda s: (len(s.t_set), sorted(s.t_set)))
    return out


def _separator_candidates(g: Graph) -> Iterator[int]:
    full = g.all_mask
    checked = set()
    for sub in range(1, 1 << g.n):
        c = sub << 1
        if len(components_mask(g, full & ~c)) != 1:
            continue
        t = g.neighbourhood_mask(c)
        if t == 0 or (c | t) == full or t in checked:
            continue
        checked.add(t)
        yield t


def separator_masks(g: Graph) -> dict[int, list[int]]:
    """Minimal separators as masks, each with its component masks."""
    return {mask_of(s.t_set): [mask_of(c) for c in s.components] for s in minimal_separators(g)}


def connectivity(g: Graph) -> int:
    g.require_connected()
    if g.n < 2:
        raise ValueError("connectivity needs at least two vertices")
    if g.is_complete():
        return g.n - 1
    return min(len(s.t_set) for s in minimal_separators(g))


def t_max(g: Graph) -> int:
    seps = minimal_separators(g)
    return max((len(s.t_set) for s in seps), default=0)


def t_min(g: Graph) -> int:
    seps = minimal_separators(g)
    return min((len(s.t_set) for s in seps), default=0)


def clique_number(g: Graph) -> int:
    best = 0

    def expand(size: int, cand: int) -> None:
        nonlocal best
        if size + bin(cand).count("1") <= best:
            return
        if not cand:
            best = max(best, size)
            return
        while cand:
            if size + bin(cand).count("1") <= best:
                return
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            expand(size + 1, cand & g.adj[v])

    expand(0, g.all_mask)
    return best


def is_chordal(g: Graph) -> tuple[bool, list[int] | None]:
    """Chordality test by maximum cardinality search.

    Returns ``(True, peo)`` with a perfect elimination ordering (each vertex's
    later neighbours form a clique) or ``(False, None)``.
    """
    weight = {v: 0 for v in g.vertices}
    visit = []
    left = set(g.vertices)
    while left:
        v = max(left, key=lambda u: (weight[u], -u))
        visit.append(v)
        left.remove(v)
        for u in _bits(g.adj[v]):
            if u in left:
                weight[u] += 1
    peo = visit[::-1]
    pos = {v: k for k, v in enumerate(peo)}
    for v in peo:
        later = [u for u in _bits(g.adj[v]) if pos[u] > pos[v]]
        if not later:
            continue
        parent = min(later, key=pos.__getitem__)
        need = mask_of(u for u in later if u != parent)
        if need & ~g.adj[parent]:
            return False, None
    return True, peo
