"""Generating sets built from separator posets, tree bases and degree bounds."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .derivations import Derivation, theta_power, theta_sep
from .errors import IncompletePosetError
from .graph import Graph, clique_number, connected_components, connectivity, minimal_separators, t_max
from .oracle import default_cutoff, find_redundant, verify_generation
from .poset import SeparatorNode, SeparatorPoset, heuristic_minimal_poset, is_complete

__all__ = [
    "CERTIFICATES",
    "GenSetReport",
    "assemble_generators",
    "certify",
    "prune_to_minimal",
    "generating_set",
    "tree_basis",
    "degree_sequence",
    "format_sequence",
    "bounds_report",
    "subsequence_check",
    "predicted_subsequence",
]

CERTIFICATES = ("uncertified", "generates_up_to_P", "minimal_up_to_P")


def degree_sequence(gens: Sequence[Derivation]) -> list[int]:
    out = []
    for th in gens:
        if th.is_zero() or not th.is_homogeneous():
            raise ValueError(f"generator {th.label} is not a nonzero homogeneous derivation")
        out.append(th.pdeg)
    return sorted(out)


def format_sequence(seq: Sequence[int]) -> str:
    return "(" + ",".join(str(d) for d in seq) + ")"


def bounds_report(g: Graph, d: int) -> dict:
    c = clique_number(g)
    tm = t_max(g)
    delta = g.max_degree()
    checks = {
        "clique": c - 1 <= d,
        "separator": tm <= d,
        "max_degree": d <= delta,
    }
    return {
        "c_minus_1": c - 1,
        "t_max": tm,
        "delta": delta,
        "d": d,
        "checks": checks,
        "ok": all(checks.values()),
    }


@dataclass
class GenSetReport:
    generators: list
    poset: SeparatorPoset | None
    certified: str = "uncertified"
    cutoff: int | None = None
    bounds: dict = field(default_factory=dict)

    @property
    def degree_sequence(self) -> list[int]:
        return degree_sequence(self.generators)

    @property
    def d(self) -> int:
        return self.degree_sequence[-1]

    def to_json(self) -> dict:
        out = {
            "generators": [th.to_json() for th in self.generators],
            "degree_sequence": self.degree_sequence,
            "bounds": self.bounds,
            "certified": self.certified,
        }
        if self.cutoff is not None:
            out["cutoff"] = self.cutoff
        if self.poset is not None:
            out["poset"] = self.poset.to_json()
        return out


def _drops_top_theta(g: Graph, q: SeparatorPoset, kappa: int) -> bool:
    # theta_kappa is a combination of theta_0..theta_{kappa-1} and the
    # derivations of all components of a separator of size kappa
    keys = {n.key for n in q}
    for sep in minimal_separators(g):
        if len(sep.t_set) != kappa:
            continue
        if all(SeparatorNode(sep.t_set, c).key in keys for c in sep.components):
            return True
    return False


def assemble_generators(g: Graph, q: SeparatorPoset | None = None) -> GenSetReport:
    g.require_connected()
    n = g.n
    if g.is_complete():
        gens = [theta_power(k, n) for k in range(n)]
        report = GenSetReport(gens, None)
    else:
        if q is None:
            q = heuristic_minimal_poset(g)
        ok, missing = is_complete(g, q)
        if not ok:
            raise IncompletePosetError(missing)
        kappa = connectivity(g)
        top = kappa if _drops_top_theta(g, q, kappa) else kappa + 1
        gens = [theta_power(k, n) for k in range(top)]
        gens.extend(theta_sep(g, node.t_set, node.c_set) for node in q.sorted_nodes())
        report = GenSetReport(gens, q)
    report.bounds = bounds_report(g, report.d)
    return report


def prune_to_minimal(g: Graph, gens: Sequence[Derivation], cutoff: int | None = None) -> list[Derivation]:
    """Drop redundant generators one at a time, highest index first."""
    gens = list(gens)
    while True:
        red = find_redundant(g, gens, cutoff)
        if not red:
            return gens
        del gens[max(red)]


def certify(g: Graph, report: GenSetReport, cutoff: int | None = None) -> GenSetReport:
    """Run the oracle on a report; upgrades its certificate in place."""
    cutoff = default_cutoff(g) if cutoff is None else cutoff
    report.cutoff = cutoff
    if not verify_generation(g, report.generators, cutoff).ok:
        report.certified = "uncertified"
        return report
    if find_redundant(g, report.generators, cutoff):
        report.certified = "generates_up_to_P"
    else:
        report.certified = "minimal_up_to_P"
    return report


def generating_set(g: Graph, cutoff: int | None = None, minimal: bool = False) -> GenSetReport:
    """Heuristic poset, assembly and oracle certification in one go."""
    report = assemble_generators(g)
    certify(g, report, cutoff)
    if minimal and report.certified == "generates_up_to_P":
        report.generators = prune_to_minimal(g, report.generators, report.cutoff)
        report.certified = "minimal_up_to_P"
        report.bounds = bounds_report(g, report.d)
    return report


def tree_basis(g: Graph) -> list[Derivation]:
    if not g.is_tree():
        raise ValueError("tree_basis needs a tree")
    if g.n == 2:
        return [theta_power(0, 2), theta_sep(g, {2}, {1})]
    internal = [v for v in g.vertices if g.degree(v) >= 2]
    root = min(internal, key=lambda v: (-g.degree(v), v))
    out = [theta_power(0, g.n)]
    for comp in connected_components(g, {root}):
        out.append(theta_sep(g, {root}, comp))
    for v in internal:
        if v == root:
            continue
        for comp in connected_components(g, {v}):
            if root not in comp:
                out.append(theta_sep(g, {v}, comp))
    return out


def predicted_subsequence(g: Graph, full_only: bool = False) -> list[int]:
    """[0..kappa] plus |T| repeated (#components - 1) times per minimal separator T.

    With ``full_only`` only the full components of each separator are counted.
    """
    kappa = connectivity(g)
    out = list(range(kappa + 1))
    for sep in minimal_separators(g):
        comps = sep.full_components(g) if full_only else sep.components
        out.extend([len(sep.t_set)] * (len(comps) - 1))
    return sorted(out)


def subsequence_check(g: Graph, seq: Sequence[int], full_only: bool = False) -> bool:
    need = Counter(predicted_subsequence(g, full_only))
    have = Counter(seq)
    return all(have[k] >= m for k, m in need.items())
