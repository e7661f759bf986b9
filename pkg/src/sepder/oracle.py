"""Ground truth for D(A(G)) by exact linear algebra, without separator theory.

Two routes are implemented:

* the literal one, which writes the membership condition as a linear system
  on homogeneous tuples (f_1..f_l) in (S_p)^l;
* a reduced one used for the heavy lifting. For a vertex r, x_r is a
  nonzerodivisor on D = D(A(G)) (a multiple x_r*h lies in D only if h does),
  so dim D_p = dim D_{p-1} + dim (D/x_r D)_p, and by graded Nakayama a
  homogeneous set generates D iff its image generates D/x_r D. The image
  splits as  Sbar*theta_0  (+)  M  with M = {f : f_r = 0, f_u in (x_u) for u
  adjacent to r, f_i - f_j in (x_i - x_j) for the other edges} over
  Sbar = Q[x_u : u != r].

Cutoffs default to max degree + 2 (overridable through SEPDER_CUTOFF); every
"generates" verdict is a statement about degrees up to the cutoff.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .derivations import Derivation, is_member, theta_power
from .errors import NotAMemberError
from .graph import Graph
from .linalg import SparseEchelon, integer_row, sparse_nullspace
from .poly import MultiPoly, grlex_key

__all__ = [
    "GradedBasis",
    "DegreeRow",
    "Verification",
    "default_cutoff",
    "module_dimension",
    "direct_module_dimension",
    "graded_basis",
    "span_dimension",
    "verify_generation",
    "minimal_degree_sequence",
    "minimal_generators",
    "find_redundant",
    "pivot_vertex",
]


@lru_cache(maxsize=None)
def monomials(n: int, deg: int, skip: int = 0) -> tuple:
    """Exponent vectors of degree ``deg`` in n variables, graded-lex descending.

    ``skip`` (1-based, 0 for none) pins that variable's exponent to zero.
    """
    if deg < 0:
        return ()

    def rec(pos: int, left: int):
        if pos == n:
            if left == 0:
                yield ()
            return
        if pos + 1 == skip:
            for rest in rec(pos + 1, left):
                yield (0,) + rest
            return
        for e in range(left, -1, -1):
            for rest in rec(pos + 1, left - e):
                yield (e,) + rest

    out = tuple(rec(0, deg))
    return tuple(sorted(out, key=grlex_key))


@lru_cache(maxsize=None)
def _index(n: int, deg: int, skip: int = 0) -> dict:
    return {e: k for k, e in enumerate(monomials(n, deg, skip))}


def default_cutoff(g: Graph) -> int:
    env = os.environ.get("SEPDER_CUTOFF")
    if env:
        return int(env)
    return g.max_degree() + 2


def pivot_vertex(g: Graph) -> int:
    """Vertex set to zero in the reduced route: largest degree, then smallest label."""
    return min(g.vertices, key=lambda v: (-g.degree(v), v))


def _check_members(g: Graph, gens: Sequence[Derivation]) -> None:
    for idx, th in enumerate(gens):
        if th.n != g.n:
            raise ValueError(f"derivation #{idx} has {th.n} entries, graph has {g.n} vertices")
        if not th.is_zero() and not th.is_homogeneous():
            raise ValueError(f"derivation #{idx} ({th.label}) is not homogeneous")
        if not is_member(g, th):
            raise NotAMemberError(idx)


# -- literal route -------------------------------------------------------------


def _direct_system(g: Graph, p: int):
    n = g.n
    idx = _index(n, p)
    size = len(idx)
    rows = []
    for i, j in g.sorted_edges():
        buckets: dict = {}
        a, b = i - 1, j - 1
        for u, sign in ((i, 1), (j, -1)):
            base = (u - 1) * size
            for e, k in idx.items():
                f = list(e)
                f[b] += f[a]
                f[a] = 0
                key = tuple(f)
                row = buckets.setdefault(key, {})
                col = base + k
                row[col] = row.get(col, 0) + sign
        rows.extend({c: v for c, v in r.items() if v} for r in buckets.values())
    return rows, n * size


def direct_module_dimension(g: Graph, p: int) -> int:
    """dim D(A(G))_p from the unreduced system on (S_p)^l."""
    if p < 0:
        return 0
    rows, n_cols = _direct_system(g, p)
    ech = SparseEchelon()
    for r in rows:
        ech.add(r)
    return n_cols - ech.rank


@dataclass
class GradedBasis:
    degree: int
    n: int
    coeff_matrix: list  # rows of Fractions over the monomial basis of (S_p)^l

    def derivations(self) -> list[Derivation]:
        mons = monomials(self.n, self.degree)
        size = len(mons)
        out = []
        for k, row in enumerate(self.coeff_matrix):
            coeffs = []
            for u in range(self.n):
                terms = {mons[m]: row[u * size + m] for m in range(size) if row[u * size + m]}
                coeffs.append(MultiPoly(self.n, terms))
            out.append(Derivation(tuple(coeffs), f"basis({self.degree},{k})"))
        return out


def graded_basis(g: Graph, p: int) -> GradedBasis:
    rows, n_cols = _direct_system(g, p)
    kernel = sparse_nullspace(rows, range(n_cols))
    matrix = [[vec.get(c, Fraction(0)) for c in range(n_cols)] for vec in kernel]
    return GradedBasis(p, g.n, matrix)


def _full_row(theta: Derivation, mult: tuple, size: int, idx: dict) -> dict:
    row = {}
    for u, f in enumerate(theta.coeffs):
        base = u * size
        for e, c in f.terms.items():
            col = base + idx[tuple(x + y for x, y in zip(e, mult))]
            row[col] = c
    return row


def span_dimension(g: Graph, gens: Sequence[Derivation], p: int) -> int:
    """dim of the span of {m * theta : m monomial, pdeg(m*theta) = p} in (S_p)^l."""
    gens = list(gens)
    _check_members(g, gens)
    if p < 0:
        return 0
    n = g.n
    idx = _index(n, p)
    size = len(idx)
    ech = SparseEchelon()
    for th in gens:
        if th.is_zero() or th.pdeg > p:
            continue
        for m in monomials(n, p - th.pdeg):
            ech.add(integer_row(_full_row(th, m, size, idx)))
    return ech.rank


# -- reduced route ---------------------------------------------------------------


class _Reduced:
    """Degree-wise data of M for a fixed graph and pivot vertex."""

    def __init__(self, g: Graph, r: int):
        self.g = g
        self.r = r
        self._dim: dict[int, int] = {}
        self._kernel: dict[int, list] = {}

    def layout(self, p: int):
        idx = _index(self.g.n, p, self.r)
        return idx, len(idx)

    def unknown_columns(self, p: int) -> list[int]:
        g, r = self.g, self.r
        mons = monomials(g.n, p, r)
        size = len(mons)
        cols = []
        for u in g.vertices:
            if u == r:
                continue
            need = g.has_edge(u, r)
            base = (u - 1) * size
            cols.extend(base + k for k, e in enumerate(mons) if not need or e[u - 1])
        return cols

    def constraints(self, p: int) -> list[dict]:
        g, r = self.g, self.r
        mons = monomials(g.n, p, r)
        size = len(mons)
        allowed = set(self.unknown_columns(p))
        rows = []
        for i, j in g.sorted_edges():
            if r in (i, j):
                continue
            a, b = i - 1, j - 1
            buckets: dict = {}
            for u, sign in ((i, 1), (j, -1)):
                base = (u - 1) * size
                for k, e in enumerate(mons):
                    col = base + k
                    if col not in allowed:
                        continue
                    f = list(e)
                    f[b] += f[a]
                    f[a] = 0
                    row = buckets.setdefault(tuple(f), {})
                    row[col] = row.get(col, 0) + sign
            rows.extend({c: v for c, v in row.items() if v} for row in buckets.values())
        return rows

    def dim(self, p: int) -> int:
        if p < 0:
            return 0
        if p not in self._dim:
            ech = SparseEchelon()
            for row in self.constraints(p):
                ech.add(row)
            self._dim[p] = len(self.unknown_columns(p)) - ech.rank
        return self._dim[p]

    def kernel(self, p: int) -> list[dict]:
        if p not in self._kernel:
            self._kernel[p] = sparse_nullspace(self.constraints(p), self.unknown_columns(p))
            self._dim[p] = len(self._kernel[p])
        return self._kernel[p]

    def quotient_dim(self, p: int) -> int:
        """dim (D / x_r D)_p."""
        if p < 0:
            return 0
        return len(monomials(self.g.n, p, self.r)) + self.dim(p)

    def project(self, theta: Derivation) -> list[tuple[int, tuple, Fraction]]:
        """Terms (u, exponent, coeff) of theta mod x_r with the theta_0 part removed."""
        r = self.r
        fr = theta.coeffs[r - 1].set_zero(r)
        out = []
        for u in self.g.vertices:
            if u == r:
                continue
            f = theta.coeffs[u - 1].set_zero(r) - fr
            out.extend((u, e, c) for e, c in f.terms.items())
        return out

    def kernel_terms(self, p: int, vec: dict) -> list[tuple[int, tuple, Fraction]]:
        mons = monomials(self.g.n, p, self.r)
        size = len(mons)
        return [(c // size + 1, mons[c % size], v) for c, v in vec.items()]

    def multiples(self, terms, deg: int, p: int):
        """Integer rows of m * element for every monomial m of degree p - deg."""
        if deg > p or not terms:
            return
        n, r = self.g.n, self.r
        idx, size = self.layout(p)
        for m in monomials(n, p - deg, r):
            row = {}
            for u, e, c in terms:
                col = (u - 1) * size + idx[tuple(x + y for x, y in zip(e, m))]
                row[col] = row.get(col, 0) + c
            yield integer_row(row)

    def lift(self, p: int, vec: dict, label: str) -> Derivation:
        """A derivation of D whose image mod x_r is the given element of M."""
        n = self.g.n
        per_vertex: dict[int, dict] = {}
        for u, e, c in self.kernel_terms(p, vec):
            per_vertex.setdefault(u, {})[e] = c
        coeffs = []
        for u in self.g.vertices:
            f = MultiPoly(n, per_vertex.get(u, {}))
            coeffs.append(f.shift(self.r) if not f.is_zero() else f)
        return Derivation(tuple(coeffs), label)


@lru_cache(maxsize=256)
def _reduced(g: Graph) -> _Reduced:
    g.require_connected()
    return _Reduced(g, pivot_vertex(g))


def module_dimension(g: Graph, p: int) -> int:
    """dim D(A(G))_p (exact)."""
    red = _reduced(g)
    return sum(red.quotient_dim(q) for q in range(p + 1))


@dataclass
class DegreeRow:
    p: int
    module_dim: int
    span_dim: int

    def to_json(self) -> dict:
        return {"p": self.p, "module_dim": self.module_dim, "span_dim": self.span_dim}


@dataclass
class Verification:
    ok: bool
    first_failure: int | None
    cutoff: int
    table: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {
            "generates": self.ok,
            "first_failing_degree": self.first_failure,
            "cutoff": self.cutoff,
            "note": f"checked degreewise for p <= {self.cutoff}",
            "degrees": [row.to_json() for row in self.table],
        }


def _check_cutoff(g: Graph, cutoff: int | None) -> int:
    if cutoff is None:
        cutoff = default_cutoff(g)
    if cutoff < g.max_degree():
        raise ValueError(f"cutoff {cutoff} is below the maximum degree {g.max_degree()}")
    return cutoff


def _reduced_ranks_agree(red: _Reduced, gens: Sequence[Derivation], p: int) -> bool:
    ech = SparseEchelon()
    target = red.dim(p)
    for th in gens:
        if th.is_zero() or th.pdeg > p:
            continue
        for row in red.multiples(red.project(th), th.pdeg, p):
            ech.add(row)
            if ech.rank == target:
                return True
    return ech.rank == target


def verify_generation(g: Graph, gens: Sequence[Derivation], cutoff: int | None = None) -> Verification:
    """Do the gens span D(A(G))_p for every p <= cutoff?"""
    gens = list(gens)
    _check_members(g, gens)
    cutoff = _check_cutoff(g, cutoff)
    red = _reduced(g)
    has_theta0 = any(not th.is_zero() and th.pdeg == 0 for th in gens)
    table = []
    module_dim = 0
    for p in range(cutoff + 1):
        module_dim += red.quotient_dim(p)
        ok = has_theta0 and _reduced_ranks_agree(red, gens, p)
        if not ok:
            table.append(DegreeRow(p, module_dim, span_dimension(g, gens, p)))
            return Verification(False, p, cutoff, table)
        table.append(DegreeRow(p, module_dim, module_dim))
    return Verification(True, None, cutoff, table)


def _minimal_generators(g: Graph, cutoff: int):
    red = _reduced(g)
    chosen = []  # (degree, terms, kernel vector)
    for p in range(1, cutoff + 1):
        target = red.dim(p)
        ech = SparseEchelon()
        for deg, terms, _ in chosen:
            for row in red.multiples(terms, deg, p):
                ech.add(row)
                if ech.rank == target:
                    break
            if ech.rank == target:
                break
        if ech.rank == target:
            continue
        for vec in red.kernel(p):
            if ech.add(integer_row(vec)):
                chosen.append((p, red.kernel_terms(p, vec), vec))
                if ech.rank == target:
                    break
    return red, chosen


def minimal_degree_sequence(g: Graph, cutoff: int | None = None) -> list[int]:
    """Degrees of a minimal homogeneous generating set (counted up to the cutoff)."""
    cutoff = _check_cutoff(g, cutoff)
    _, chosen = _minimal_generators(g, cutoff)
    return [0] + [deg for deg, _, _ in chosen]


def minimal_generators(g: Graph, cutoff: int | None = None) -> list[Derivation]:
    """An explicit minimal generating set (valid up to the cutoff), theta_0 first."""
    cutoff = _check_cutoff(g, cutoff)
    red, chosen = _minimal_generators(g, cutoff)
    out = [theta_power(0, g.n)]
    for k, (deg, _, vec) in enumerate(chosen):
        out.append(red.lift(deg, vec, f"oracle({deg},{k})"))
    return out


def find_redundant(g: Graph, gens: Sequence[Derivation], cutoff: int | None = None) -> list[int]:
    """Indices whose generator lies in the module generated by the others.

    Assumes the whole list generates (run verify_generation first); under that
    assumption the test can be done in D / x_r D.
    """
    gens = list(gens)
    _check_members(g, gens)
    _check_cutoff(g, cutoff)
    red = _reduced(g)
    degree0 = [k for k, th in enumerate(gens) if not th.is_zero() and th.pdeg == 0]
    projected = [red.project(th) if not th.is_zero() else [] for th in gens]
    out = []
    for i, th in enumerate(gens):
        if th.is_zero():
            out.append(i)
            continue
        if not [k for k in degree0 if k != i]:
            continue  # nothing else can produce theta_0
        p = th.pdeg
        if p == 0:
            out.append(i)
            continue
        ech = SparseEchelon()
        for k, other in enumerate(gens):
            if k == i or other.is_zero() or other.pdeg > p:
                continue
            for row in red.multiples(projected[k], other.pdeg, p):
                ech.add(row)
        idx, size = red.layout(p)
        row = {}
        for u, e, c in projected[i]:
            col = (u - 1) * size + idx[e]
            row[col] = row.get(col, 0) + c
        if ech.contains(integer_row(row)):
            out.append(i)
    return out
