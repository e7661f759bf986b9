"""Derivations of S = Q[x1..xl] and the graphic derivation module D(A(G)).

A derivation is stored through its values on the variables: ``coeffs[i-1]``
is theta(x_i), the coefficient of the partial derivative D_i.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NotAMemberError
from .graph import Graph, connected_components
from .poly import MultiPoly, UniPolyOverS, det_poly_matrix, substitute_equal

__all__ = [
    "Derivation",
    "SaitoResult",
    "defining_polynomial",
    "theta_power",
    "theta_sep",
    "theta_sep_poly",
    "sigma_neighbourhood",
    "phi",
    "is_member",
    "coefficient_matrix",
    "saito_check",
]


def _fmt_set(s: Iterable[int]) -> str:
    return "{" + ",".join(str(v) for v in sorted(s)) + "}"


@dataclass(frozen=True)
class Derivation:
    coeffs: tuple
    label: str = "custom"

    def __post_init__(self):
        cs = tuple(self.coeffs)
        if not cs:
            raise ValueError("a derivation needs at least one coefficient")
        n = len(cs)
        if any(c.n_vars != n for c in cs):
            raise ValueError("every coefficient must live in the ring with one variable per entry")
        object.__setattr__(self, "coeffs", cs)

    @property
    def n(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def is_homogeneous(self) -> bool:
        degs = {c.degree() for c in self.coeffs if not c.is_zero()}
        return len(degs) <= 1 and all(c.is_homogeneous() for c in self.coeffs)

    @property
    def pdeg(self) -> int:
        """Polynomial degree of a homogeneous derivation."""
        if not self.is_homogeneous() or self.is_zero():
            raise ValueError(f"derivation {self.label} has no polynomial degree")
        return next(c.degree() for c in self.coeffs if not c.is_zero())

    def __add__(self, other: "Derivation") -> "Derivation":
        return Derivation(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), "custom")

    def __sub__(self, other: "Derivation") -> "Derivation":
        return Derivation(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)), "custom")

    def scale(self, f: MultiPoly) -> "Derivation":
        return Derivation(tuple(f * c for c in self.coeffs), "custom")

    def relabel(self, label: str) -> "Derivation":
        return Derivation(self.coeffs, label)

    def to_json(self) -> dict:
        return {"label": self.label, "coeffs": [str(c) for c in self.coeffs]}

    def __str__(self) -> str:
        parts = [f"({c})*D{i}" for i, c in enumerate(self.coeffs, start=1) if not c.is_zero()]
        return " + ".join(parts) if parts else "0"


def defining_polynomial(g: Graph) -> MultiPoly:
    out = MultiPoly.constant(g.n, 1)
    for i, j in g.sorted_edges():
        out = out * MultiPoly.linear_diff(g.n, i, j)
    return out


def theta_power(k: int, n: int) -> Derivation:
    if k < 0:
        raise ValueError("theta_k needs k >= 0")
    coeffs = []
    for i in range(n):
        exp = [0] * n
        exp[i] = k
        coeffs.append(MultiPoly.monomial(exp))
    return Derivation(tuple(coeffs), f"theta_{k}")


def _check_pair(g: Graph, t_set: frozenset, c_set: frozenset) -> None:
    for v in t_set | c_set:
        g._check_vertex(v)
    if t_set & c_set:
        raise ValueError(f"T={_fmt_set(t_set)} and C={_fmt_set(c_set)} overlap")
    if not c_set:
        raise ValueError("C must be nonempty")
    # C must be a union of components of G - T
    comps = connected_components(g, t_set)
    covered = frozenset()
    for comp in comps:
        if comp & c_set:
            if not comp <= c_set:
                raise ValueError(f"C={_fmt_set(c_set)} splits a component of G-T")
            covered |= comp
    if covered != c_set:
        raise ValueError(f"C={_fmt_set(c_set)} is not a union of components of G-T")


def theta_sep(g: Graph, t_set: Iterable[int], c_set: Iterable[int]) -> Derivation:
    t_set, c_set = frozenset(t_set), frozenset(c_set)
    _check_pair(g, t_set, c_set)
    n = g.n
    coeffs = []
    for i in g.vertices:
        if i in c_set:
            f = MultiPoly.constant(n, 1)
            for t in sorted(t_set):
                f = f * MultiPoly.linear_diff(n, i, t)
        else:
            f = MultiPoly.zero(n)
        coeffs.append(f)
    if not t_set and c_set == frozenset(g.vertices):
        return Derivation(tuple(coeffs), "theta_0")
    return Derivation(tuple(coeffs), f"sep({_fmt_set(t_set)},{_fmt_set(c_set)})")


def theta_sep_poly(g: Graph, t_set: Iterable[int], c_set: Iterable[int], p: UniPolyOverS) -> Derivation:
    t_set, c_set = frozenset(t_set), frozenset(c_set)
    _check_pair(g, t_set, c_set)
    n = g.n
    coeffs = []
    for k in g.vertices:
        if k in c_set:
            f = p.evaluate_at_var(k, n)
            for t in sorted(t_set):
                f = f * MultiPoly.linear_diff(n, k, t)
        else:
            f = MultiPoly.zero(n)
        coeffs.append(f)
    return Derivation(tuple(coeffs), f"sep_poly({_fmt_set(t_set)},{_fmt_set(c_set)})")


def sigma_neighbourhood(g: Graph, i: int) -> Derivation:
    g._check_vertex(i)
    n = g.n
    f = MultiPoly.constant(n, 1)
    for j in sorted(g.neighbours(i)):
        f = f * MultiPoly.linear_diff(n, i, j)
    coeffs = tuple(f if k == i else MultiPoly.zero(n) for k in g.vertices)
    return Derivation(coeffs, f"sigma({i})")


def phi(i: int, n: int) -> Derivation:
    """Entry k is prod_{j<i} (x_k - x_j)."""
    if not (1 <= i <= n):
        raise ValueError(f"phi index {i} outside 1..{n}")
    coeffs = []
    for k in range(1, n + 1):
        f = MultiPoly.constant(n, 1)
        for j in range(1, i):
            f = f * MultiPoly.linear_diff(n, k, j)
        coeffs.append(f)
    return Derivation(tuple(coeffs), f"phi({i})")


def is_member(g: Graph, theta: Derivation) -> bool:
    if theta.n != g.n:
        raise ValueError(f"derivation has {theta.n} entries, graph has {g.n} vertices")
    for i, j in g.edges:
        diff = theta.coeffs[i - 1] - theta.coeffs[j - 1]
        if not substitute_equal(diff, i, j).is_zero():
            return False
    return True


def coefficient_matrix(thetas: Sequence[Derivation]) -> list[list[MultiPoly]]:
    """M[i][j] = theta_j(x_i)."""
    n = thetas[0].n
    return [[th.coeffs[i] for th in thetas] for i in range(n)]


@dataclass(frozen=True)
class SaitoResult:
    basis: bool
    scalar: Fraction
    determinant: MultiPoly


def saito_check(g: Graph, thetas: Sequence[Derivation]) -> SaitoResult:
    """Saito's criterion: l members form a basis iff det M = c * Q with c != 0."""
    thetas = list(thetas)
    if len(thetas) != g.n:
        raise ValueError(f"Saito's criterion needs exactly {g.n} derivations, got {len(thetas)}")
    for idx, th in enumerate(thetas):
        if not is_member(g, th):
            raise NotAMemberError(idx)
    det = det_poly_matrix(coefficient_matrix(thetas))
    q = defining_polynomial(g)
    if det.is_zero():
        return SaitoResult(False, Fraction(0), det)
    exp_d, c_d = det.leading()
    exp_q, c_q = q.leading()
    if exp_d != exp_q:
        return SaitoResult(False, Fraction(0), det)
    c = c_d / c_q
    if (det - q * c).is_zero():
        return SaitoResult(True, c, det)
    return SaitoResult(False, Fraction(0), det)
