"""Separator posets, descending chains and completeness.

Nodes are pairs (T, C) where C is a union of components of G - T. They are
ordered by inclusion of C. Internally the closure works with bitmasks.

A node is *available* when its derivation theta_C^T lies in the module
generated by the current set together with theta_0..theta_kappa. It is
*chained* when, in addition, every polynomial twist theta_C^{T,p} is
generated; singletons are chained as soon as they are available, and a larger
C is chained when some chained (T'', C - v) with T'' inside T + v exists.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable, Sequence

from .derivations import theta_power, theta_sep
from .graph import (
    Graph,
    _bits,
    components_mask,
    connectivity,
    mask_of,
    minimal_separators,
    set_of,
)
from .linalg import SparseEchelon
from .poly import MultiPoly

__all__ = [
    "ORIGINS",
    "SeparatorNode",
    "SeparatorPoset",
    "Closure",
    "build_poset",
    "descending_chain",
    "generation_rule",
    "complement_rule",
    "close_poset",
    "is_complete",
    "heuristic_minimal_poset",
]

ORIGINS = ("minimal", "augmented", "generated")


def _fmt(s: Iterable[int]) -> str:
    return ",".join(str(v) for v in sorted(s))


@dataclass(frozen=True)
class SeparatorNode:
    t_set: frozenset
    c_set: frozenset
    origin: str = field(default="minimal", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "t_set", frozenset(self.t_set))
        object.__setattr__(self, "c_set", frozenset(self.c_set))
        if self.origin not in ORIGINS:
            raise ValueError(f"unknown origin {self.origin!r}")

    @property
    def key(self) -> tuple[int, int]:
        return mask_of(self.t_set), mask_of(self.c_set)

    @property
    def rank(self) -> int:
        return len(self.c_set)

    def sort_key(self):
        return (len(self.t_set), sorted(self.t_set), sorted(self.c_set))

    def label(self) -> str:
        return f"[{_fmt(self.t_set)}],{{{_fmt(self.c_set)}}}"

    def to_json(self) -> dict:
        return {"T": sorted(self.t_set), "C": sorted(self.c_set), "origin": self.origin}

    def __repr__(self) -> str:
        return f"({{{_fmt(self.t_set)}}},{{{_fmt(self.c_set)}}})"


def _node_from_key(key: tuple[int, int], origin: str) -> SeparatorNode:
    return SeparatorNode(set_of(key[0]), set_of(key[1]), origin)


class SeparatorPoset:
    """A finite set of nodes ordered by component inclusion."""

    def __init__(self, nodes: Iterable[SeparatorNode] = ()):
        self.nodes: list[SeparatorNode] = []
        self._keys: set = set()
        for node in nodes:
            self.add(node)

    def add(self, node: SeparatorNode) -> bool:
        if node.key in self._keys:
            return False
        self._keys.add(node.key)
        self.nodes.append(node)
        return True

    def remove(self, node: SeparatorNode) -> None:
        self._keys.discard(node.key)
        self.nodes = [n for n in self.nodes if n.key != node.key]

    def copy(self) -> "SeparatorPoset":
        return SeparatorPoset(self.nodes)

    def __contains__(self, node) -> bool:
        return node.key in self._keys

    def __len__(self) -> int:
        return len(self.nodes)

    def __iter__(self):
        return iter(self.nodes)

    @staticmethod
    def leq(a: SeparatorNode, b: SeparatorNode) -> bool:
        return a.c_set <= b.c_set

    def sorted_nodes(self) -> list[SeparatorNode]:
        return sorted(self.nodes, key=SeparatorNode.sort_key)

    def hasse_edges(self) -> list[tuple[SeparatorNode, SeparatorNode]]:
        """Covering pairs (lower, upper) with strictly smaller component."""
        nodes = self.sorted_nodes()
        out = []
        for a in nodes:
            for b in nodes:
                if not a.c_set < b.c_set:
                    continue
                if any(a.c_set < m.c_set < b.c_set for m in nodes):
                    continue
                out.append((a, b))
        return out

    def to_json(self) -> dict:
        nodes = self.sorted_nodes()
        index = {n.key: k for k, n in enumerate(nodes)}
        return {
            "nodes": [n.to_json() for n in nodes],
            "covers": [[index[a.key], index[b.key]] for a, b in self.hasse_edges()],
        }

    def to_dot(self, name: str = "poset") -> str:
        nodes = self.sorted_nodes()
        ids = {n.key: f"n{k}" for k, n in enumerate(nodes)}
        lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box];"]
        for n in nodes:
            if n.origin == "generated":
                attrs = f'label=<<I>{n.label()}</I>>, style=solid'
            elif n.origin == "augmented":
                attrs = f'label="{n.label()}", style=bold'
            else:
                attrs = f'label="{n.label()}", style=solid'
            lines.append(f"  {ids[n.key]} [{attrs}];")
        for a, b in self.hasse_edges():
            lines.append(f"  {ids[a.key]} -> {ids[b.key]};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _minimal_keys(g: Graph) -> list[tuple[int, int]]:
    out = []
    for sep in minimal_separators(g):
        t = mask_of(sep.t_set)
        out.extend((t, mask_of(c)) for c in sep.components)
    return out


def build_poset(g: Graph) -> SeparatorPoset:
    g.require_connected()
    if g.is_complete():
        warnings.warn("complete graph: no minimal separators, the poset is empty", stacklevel=2)
        return SeparatorPoset()
    return SeparatorPoset(_node_from_key(k, "minimal") for k in _minimal_keys(g))


def _classify(g: Graph, t: int, c: int, minimal: set) -> str:
    return "minimal" if (t, c) in minimal else "augmented"


def descending_chain(g: Graph, t_set: Iterable[int], c_set: Iterable[int],
                     ordering: Sequence[int] | None = None) -> list[SeparatorNode]:
    """Chain (T_i, C_i) with C_i the first i vertices of the ordering and T_i = N(C_i).

    The last element is (T, C) itself.
    """
    t_set, c_set = frozenset(t_set), frozenset(c_set)
    theta_sep(g, t_set, c_set)  # validates the pair
    if ordering is None:
        ordering = sorted(c_set)
    ordering = list(ordering)
    if sorted(ordering) != sorted(c_set) or len(set(ordering)) != len(ordering):
        raise ValueError(f"ordering {ordering} is not a permutation of C={sorted(c_set)}")
    minimal = set(_minimal_keys(g)) if not g.is_complete() else set()
    chain = []
    c = 0
    for v in ordering[:-1]:
        c |= 1 << v
        t = g.neighbourhood_mask(c)
        chain.append(_node_from_key((t, c), _classify(g, t, c, minimal)))
    t, c = mask_of(t_set), mask_of(c_set)
    chain.append(_node_from_key((t, c), _classify(g, t, c, minimal)))
    return chain


def generation_rule(g: Graph, target: SeparatorNode, parts: Sequence[SeparatorNode],
                    partition: tuple[Iterable[int], Iterable[int]]) -> bool:
    """Set identity: (union over A of C_i) minus (union over B of C_i) = C and every T_i lies in T."""
    a_idx, b_idx = (set(x) for x in partition)
    if not parts:
        raise ValueError("parts must be nonempty")
    if a_idx & b_idx or (a_idx | b_idx) != set(range(len(parts))):
        raise ValueError("A|B must be a partition of the part indices")
    plus = frozenset().union(*(parts[i].c_set for i in a_idx))
    minus = frozenset().union(*(parts[i].c_set for i in b_idx))
    if plus - minus != target.c_set:
        return False
    return all(p.t_set <= target.t_set for p in parts)


def complement_rule(g: Graph, node: SeparatorNode) -> SeparatorNode:
    """(T, V - (T + C)), checked against E_T - theta_C^T."""
    rest = frozenset(g.vertices) - node.t_set - node.c_set
    if not rest:
        raise ValueError(f"{node!r} has an empty complement")
    out = SeparatorNode(node.t_set, rest, "generated")
    n = g.n
    whole = []
    for j in g.vertices:
        f = MultiPoly.constant(n, 1)
        for t in sorted(node.t_set):
            f = f * MultiPoly.linear_diff(n, j, t)
        whole.append(f)
    lhs = theta_sep(g, out.t_set, out.c_set).coeffs
    rhs = theta_sep(g, node.t_set, node.c_set).coeffs
    assert all((w - r - l).is_zero() for w, r, l in zip(whole, rhs, lhs))
    return out


# -- closure -----------------------------------------------------------------------


@dataclass
class Closure:
    available: dict  # key -> origin
    chained: dict  # key -> predecessor key (None for singletons)
    targets: list  # keys of the separator poset
    theta_all: bool  # every theta_k is generated

    @property
    def missing(self) -> list[SeparatorNode]:
        return [_node_from_key(k, "minimal") for k in self.targets if k not in self.chained]

    @property
    def complete(self) -> bool:
        return all(k in self.chained for k in self.targets)

    def chain_of(self, key) -> list[tuple[int, int]]:
        out = []
        while key is not None:
            out.append(key)
            key = self.chained[key]
        return out[::-1]


class _Closer:
    def __init__(self, g: Graph):
        self.g = g
        self.kappa = connectivity(g)
        self.delta = g.max_degree()
        self.targets = _minimal_keys(g)
        self.target_comps = {c for _, c in self.targets}
        self.seps = sorted({t for t, _ in self.targets}, key=lambda t: (bin(t).count("1"), t))
        self._comps: dict[int, list[int]] = {}

    def comps(self, t: int) -> list[int]:
        if t not in self._comps:
            self._comps[t] = components_mask(self.g, t)
        return self._comps[t]

    def inside_target(self, c: int) -> bool:
        return any(c & tc == c for tc in self.target_comps)

    def run(self, keys: Iterable[tuple[int, int]], cross: bool = True) -> Closure:
        avail = {k: "given" for k in keys}
        chained: dict = {}
        h = self.kappa
        while True:
            changed = self._chain(avail, chained)
            if h != -1 and self._theta_unbounded(avail, chained, h):
                h = -1
                changed = True
            changed |= self._same_t(avail, h)
            if changed:
                continue
            if all(k in chained for k in self.targets):
                break
            if not cross or not self._cross_t(avail, chained):
                break
        return Closure(avail, chained, list(self.targets), h == -1)

    def _chain(self, avail: dict, chained: dict) -> bool:
        changed = False
        by_c: dict[int, list[int]] = {}
        grew = True
        while grew:
            grew = False
            by_c.clear()
            for t, c in chained:
                by_c.setdefault(c, []).append(t)
            for t, c in sorted(avail, key=lambda k: bin(k[1]).count("1")):
                if (t, c) in chained:
                    continue
                if c & (c - 1) == 0:
                    chained[(t, c)] = None
                    grew = True
                    continue
                for v in _bits(c):
                    bit = 1 << v
                    rest = c & ~bit
                    for t2 in by_c.get(rest, ()):
                        if t2 & ~(t | bit) == 0:
                            chained[(t, c)] = (t2, rest)
                            grew = True
                            break
                    if (t, c) in chained:
                        break
            changed |= grew
        return changed

    def _theta_unbounded(self, avail: dict, chained: dict, h: int) -> bool:
        for t in self.seps:
            if bin(t).count("1") > h + 1:
                continue
            if all((t, c) in chained for c in self.comps(t)):
                return True
        return False

    def _same_t(self, avail: dict, h: int) -> bool:
        by_t: dict[int, list[int]] = {}
        for t, c in avail:
            by_t.setdefault(t, []).append(c)
        changed = False
        for t, cs in by_t.items():
            comps = self.comps(t)
            k = len(comps)
            if k < 2:
                continue
            ech = SparseEchelon()
            for c in cs:
                ech.add({i: 1 for i, comp in enumerate(comps) if comp & c})
            if h == -1 or bin(t).count("1") <= h:
                ech.add({i: 1 for i in range(k)})
            for pick in range(1, 1 << k):
                row = {i: 1 for i in range(k) if pick >> i & 1}
                c = 0
                for i in row:
                    c |= comps[i]
                if (t, c) in avail or not self.inside_target(c):
                    continue
                if ech.contains(row):
                    avail[(t, c)] = "generated"
                    changed = True
        return changed

    def _cross_t(self, avail: dict, chained: dict) -> bool:
        g = self.g
        keys = sorted(avail)
        found = {}
        for size in (2, 3):
            for parts in combinations(keys, size):
                union_t = 0
                for t, _ in parts:
                    union_t |= t
                for signs in product((1, -1), repeat=size):
                    if 1 not in signs:
                        continue
                    res = self._try(g, parts, signs, union_t, chained)
                    if res is not None and res not in avail:
                        found[res] = "generated"
        avail.update(found)
        return bool(found)

    def _try(self, g: Graph, parts, signs, union_t: int, chained: dict):
        weight = {}
        for (t, c), s in zip(parts, signs):
            for v in _bits(c):
                weight[v] = weight.get(v, 0) + s
        c0 = 0
        for v, w in weight.items():
            if w == 1 and not union_t >> v & 1:
                c0 |= 1 << v
        if not c0:
            return None
        t = union_t | g.neighbourhood_mask(c0)
        if bin(t).count("1") > self.delta or not self.inside_target(c0):
            return None
        for v, w in weight.items():
            if not t >> v & 1 and w not in (0, 1):
                return None
        plus = minus = 0
        for (_, c), s in zip(parts, signs):
            if s == 1:
                plus |= c
            else:
                minus |= c
        if plus & ~minus != c0:
            return None
        for pt, pc in parts:
            if pt != t and (pt, pc) not in chained:
                return None
        return (t, c0)


def close_poset(g: Graph, q: SeparatorPoset, cross: bool = True) -> Closure:
    g.require_connected()
    return _Closer(g).run((n.key for n in q), cross=cross)


def is_complete(g: Graph, q: SeparatorPoset) -> tuple[bool, list[SeparatorNode]]:
    """Completeness of q, together with the separator-poset elements lacking a complete chain."""
    if g.is_complete():
        return True, []
    cl = close_poset(g, q)
    return cl.complete, cl.missing


# -- heuristic ------------------------------------------------------------------------


def _augment_candidates(g: Graph, cl: Closure, tops: list) -> list[tuple[int, int]]:
    chained_by_c: dict[int, list[int]] = {}
    for t, c in cl.chained:
        chained_by_c.setdefault(c, []).append(t)
    out = set()
    for t, c in tops:
        if (t, c) in cl.chained:
            continue
        sub = c & (c - 1)
        while sub:
            t_sub = g.neighbourhood_mask(sub)
            key = (t_sub, sub)
            if key not in cl.available:
                connected = sum(1 for m in components_mask(g, t_sub) if m & sub) == 1
                if connected and _extends_chain(sub, t_sub, chained_by_c):
                    out.add(key)
            sub = (sub - 1) & c
    return sorted(out, key=lambda k: (bin(k[0]).count("1"), sorted(_bits(k[0])), sorted(_bits(k[1]))))


def _extends_chain(c: int, t: int, chained_by_c: dict) -> bool:
    if c & (c - 1) == 0:
        return True
    for v in _bits(c):
        bit = 1 << v
        for t2 in chained_by_c.get(c & ~bit, ()):
            if t2 & ~(t | bit) == 0:
                return True
    return False


def heuristic_minimal_poset(g: Graph) -> SeparatorPoset:
    """Start from the separator poset, augment until complete, then thin out."""
    g.require_connected()
    if g.is_complete():
        raise ValueError("complete graphs have no separator poset to work with")
    closer = _Closer(g)
    q = build_poset(g)
    t_min = closer.seps[0]
    min_tops = [(t_min, c) for c in closer.comps(t_min)]

    cl = closer.run(n.key for n in q)
    while not cl.complete:
        pending = [k for k in min_tops if k not in cl.chained]
        tops = pending or [k for k in closer.targets if k not in cl.chained]
        cands = _augment_candidates(g, cl, tops)
        if not cands:
            cands = _augment_candidates(g, cl, [k for k in closer.targets if k not in cl.chained])
        if not cands:
            raise RuntimeError("no augmentation candidate left; poset cannot be completed")
        q.add(_node_from_key(cands[0], "augmented"))
        cl = closer.run(n.key for n in q)

    protected = set()
    for k in min_tops:
        protected.update(cl.chain_of(k))
    for t in closer.seps:
        if t == t_min:
            continue
        for node in sorted((n for n in q if n.key[0] == t and n.origin == "minimal"),
                           key=lambda n: sorted(n.c_set)):
            if node.key in protected:
                continue
            trial = q.copy()
            trial.remove(node)
            if closer.run(n.key for n in trial).complete:
                q = trial
                break
    return q
