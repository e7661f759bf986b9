"""Command line front end: ``sepder <command> [options] GRAPH``."""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import __version__
from .derivations import Derivation, saito_check
from .errors import DisconnectedGraphError, ParseError
from .genset import (
    assemble_generators,
    bounds_report,
    format_sequence,
    generating_set,
    predicted_subsequence,
    subsequence_check,
)
from .graph import Graph, connectivity, minimal_separators, parse_graph, t_max, t_min, to_graph6
from .oracle import default_cutoff, minimal_degree_sequence, verify_generation
from .poly import parse_poly
from .poset import build_poset, descending_chain, heuristic_minimal_poset, is_complete

EXIT_OK, EXIT_PARSE, EXIT_DISCONNECTED, EXIT_VERIFY = 0, 1, 2, 3

COMMANDS = ("separators", "connectivity", "poset", "generators", "verify",
            "degrees", "bounds", "saito", "census")


@dataclass
class RunConfig:
    command: str
    input_path: str
    format: str | None = None
    cutoff: int | None = None
    ordering: list | None = None
    output: str = "text"
    heuristic: bool = False
    minimal: bool = False
    generators: str | None = None
    jobs: int = 1


def _detect_format(path: Path, given: str | None) -> str:
    if given:
        return given
    return "graph6" if path.suffix in (".g6", ".graph6") else "edge_list"


def load_graph(path: str, format: str | None = None) -> Graph:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_graph(text, _detect_format(p, format))


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _check_cutoff(g: Graph, cutoff: int | None) -> int:
    cutoff = default_cutoff(g) if cutoff is None else cutoff
    if cutoff < g.max_degree():
        raise ValueError(f"cutoff {cutoff} is below the maximum degree {g.max_degree()}")
    return cutoff


def read_generators(path: str, n: int) -> list[Derivation]:
    """One derivation per line: ``label: f_1; f_2; ...; f_n`` (label optional)."""
    out = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        label = "custom"
        if ":" in line:
            label, line = (s.strip() for s in line.split(":", 1))
        fields = [s.strip() for s in line.split(";")]
        if len(fields) != n:
            raise ParseError(f"{path}:{lineno}: expected {n} entries, got {len(fields)}")
        try:
            coeffs = tuple(parse_poly(f, n) for f in fields)
        except ValueError as exc:
            raise ParseError(f"{path}:{lineno}: {exc}") from None
        out.append(Derivation(coeffs, label))
    return out


# -- commands ----------------------------------------------------------------------


def cmd_separators(g: Graph, cfg: RunConfig):
    seps = minimal_separators(g)
    if cfg.output == "json":
        return _dump({"separators": [s.to_json() for s in seps],
                      "t_max": t_max(g), "t_min": t_min(g)}), EXIT_OK
    lines = []
    for s in seps:
        comps = " | ".join("{" + ",".join(map(str, sorted(c))) + "}" for c in s.components)
        lines.append("{" + ",".join(map(str, sorted(s.t_set))) + "}: " + comps)
    return "\n".join(lines) if lines else "(no minimal separators)", EXIT_OK


def cmd_connectivity(g: Graph, cfg: RunConfig):
    k = connectivity(g)
    if cfg.output == "json":
        return _dump({"connectivity": k}), EXIT_OK
    return str(k), EXIT_OK


def cmd_poset(g: Graph, cfg: RunConfig):
    q = heuristic_minimal_poset(g) if cfg.heuristic else build_poset(g)
    if cfg.output == "dot":
        return q.to_dot().rstrip("\n"), EXIT_OK
    complete, missing = is_complete(g, q)
    report = q.to_json()
    report["complete"] = complete
    report["missing"] = [m.to_json() for m in missing]
    if cfg.ordering:
        rank = {v: k for k, v in enumerate(cfg.ordering)}
        report["chains"] = []
        for node in q.sorted_nodes():
            order = sorted(node.c_set, key=lambda v: rank.get(v, len(rank) + v))
            chain = descending_chain(g, node.t_set, node.c_set, order)
            report["chains"].append([c.to_json() for c in chain])
    if cfg.output == "json":
        return _dump(report), EXIT_OK
    lines = [f"{n.label()}  ({n.origin})" for n in q.sorted_nodes()]
    lines.append(f"complete: {'true' if complete else 'false'}")
    for m in missing:
        lines.append(f"missing chain: {m.label()}")
    for chain in report.get("chains", []):
        lines.append("chain: " + " < ".join(f"[{_c(c['T'])}],{{{_c(c['C'])}}}" for c in chain))
    return "\n".join(lines), EXIT_OK


def _c(vs) -> str:
    return ",".join(map(str, vs))


def cmd_generators(g: Graph, cfg: RunConfig):
    report = generating_set(g, _check_cutoff(g, cfg.cutoff), minimal=cfg.minimal)
    code = EXIT_OK if report.certified != "uncertified" else EXIT_VERIFY
    if cfg.output == "json":
        return _dump(report.to_json()), code
    lines = [f"{th.label}: {th}" for th in report.generators]
    lines.append(f"degrees: {format_sequence(report.degree_sequence)}")
    lines.append(f"certified: {report.certified} (P = {report.cutoff})")
    return "\n".join(lines), code


def cmd_verify(g: Graph, cfg: RunConfig):
    cutoff = _check_cutoff(g, cfg.cutoff)
    if cfg.generators:
        gens = read_generators(cfg.generators, g.n)
    else:
        gens = assemble_generators(g).generators
    res = verify_generation(g, gens, cutoff)
    code = EXIT_OK if res.ok else EXIT_VERIFY
    if cfg.output == "json":
        return _dump(res.to_json()), code
    lines = [f"p={row.p}: module {row.module_dim}, span {row.span_dim}" for row in res.table]
    if res.ok:
        lines.append(f"generates: true (checked for p <= {cutoff})")
    else:
        lines.append(f"generates: false (first failure at p = {res.first_failure})")
    return "\n".join(lines), code


def cmd_degrees(g: Graph, cfg: RunConfig):
    cutoff = _check_cutoff(g, cfg.cutoff)
    seq = minimal_degree_sequence(g, cutoff)
    if cfg.output == "json":
        return _dump({"degree_sequence": seq, "d": seq[-1], "cutoff": cutoff}), EXIT_OK
    return format_sequence(seq), EXIT_OK


def cmd_bounds(g: Graph, cfg: RunConfig):
    cutoff = _check_cutoff(g, cfg.cutoff)
    seq = minimal_degree_sequence(g, cutoff)
    rep = bounds_report(g, seq[-1])
    rep["degree_sequence"] = seq
    rep["predicted_subsequence"] = predicted_subsequence(g)
    rep["subsequence_contained"] = subsequence_check(g, seq)
    code = EXIT_OK if rep["ok"] else EXIT_VERIFY
    if cfg.output == "json":
        return _dump(rep), code
    lines = [
        f"d = {rep['d']}",
        f"c - 1 = {rep['c_minus_1']} <= d: {_tf(rep['checks']['clique'])}",
        f"t_max = {rep['t_max']} <= d: {_tf(rep['checks']['separator'])}",
        f"d <= max degree = {rep['delta']}: {_tf(rep['checks']['max_degree'])}",
        f"subsequence {format_sequence(rep['predicted_subsequence'])} contained: "
        f"{_tf(rep['subsequence_contained'])}",
    ]
    return "\n".join(lines), code


def _tf(b: bool) -> str:
    return "true" if b else "false"


def cmd_saito(g: Graph, cfg: RunConfig):
    report = generating_set(g, _check_cutoff(g, cfg.cutoff), minimal=True)
    gens = report.generators
    if len(gens) != g.n:
        out = {"basis": False, "size": len(gens), "reason": "minimal generating set is not of size l"}
        if cfg.output == "json":
            return _dump(out), EXIT_OK
        return f"basis: false, minimal generating set has {len(gens)} elements", EXIT_OK
    res = saito_check(g, gens)
    if cfg.output == "json":
        return _dump({"basis": res.basis, "c": str(res.scalar),
                      "generators": [th.to_json() for th in gens]}), EXIT_OK
    return f"basis: {_tf(res.basis)}, c = {res.scalar}", EXIT_OK


def census_record(source: str, g: Graph, cutoff: int | None) -> dict:
    rec = {"source": source, "n": g.n, "graph6": to_graph6(g)}
    if not g.is_connected():
        rec["error"] = "disconnected"
        return rec
    cut = default_cutoff(g) if cutoff is None else max(cutoff, g.max_degree())
    seq = minimal_degree_sequence(g, cut)
    report = generating_set(g, cut)
    rec.update({
        "connectivity": connectivity(g),
        "t_max": t_max(g),
        "degree_sequence": seq,
        "bounds": bounds_report(g, seq[-1]),
        "subsequence_contained": subsequence_check(g, seq),
        "assembled_size": len(report.generators),
        "generates": report.certified != "uncertified",
        "cutoff": cut,
    })
    return rec


def _census_job(args):
    return census_record(*args)


def _census_inputs(directory: Path, format: str | None):
    jobs = []
    files = sorted(p for p in directory.iterdir() if p.suffix in (".edges", ".g6", ".graph6"))
    for p in files:
        fmt = _detect_format(p, format)
        if fmt == "graph6":
            for k, line in enumerate(l for l in p.read_text().splitlines() if l.strip()):
                jobs.append((f"{p.name}:{k + 1}", parse_graph(line, "graph6")))
        else:
            jobs.append((p.name, parse_graph(p.read_text(), fmt)))
    return jobs


def run_census(cfg: RunConfig, out) -> int:
    directory = Path(cfg.input_path)
    if not directory.is_dir():
        raise ParseError(f"{cfg.input_path} is not a directory")
    jobs = [(src, g, cfg.cutoff) for src, g in _census_inputs(directory, cfg.format)]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            records = list(pool.map(_census_job, jobs))
    else:
        records = [_census_job(j) for j in jobs]
    code = EXIT_OK
    for rec in records:
        print(_dump(rec), file=out)
        if "error" not in rec and not (rec["bounds"]["ok"] and rec["generates"]):
            code = EXIT_VERIFY
    return code


HANDLERS = {
    "separators": cmd_separators,
    "connectivity": cmd_connectivity,
    "poset": cmd_poset,
    "generators": cmd_generators,
    "verify": cmd_verify,
    "degrees": cmd_degrees,
    "bounds": cmd_bounds,
    "saito": cmd_saito,
}


def run(cfg: RunConfig, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        if cfg.command == "census":
            return run_census(cfg, out)
        g = load_graph(cfg.input_path, cfg.format)
        if not g.is_connected():
            raise DisconnectedGraphError("the input graph is not connected")
        text, code = HANDLERS[cfg.command](g, cfg)
    except ParseError as exc:
        print(f"sepder: parse error: {exc}", file=err)
        return EXIT_PARSE
    except DisconnectedGraphError as exc:
        print(f"sepder: {exc}", file=err)
        return EXIT_DISCONNECTED
    except ValueError as exc:
        print(f"sepder: {exc}", file=err)
        return EXIT_PARSE
    print(text, file=out)
    return code


def _ordering(text: str) -> list[int]:
    try:
        return [int(v) for v in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad vertex ordering {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sepder", description="Separator-based derivations of graphic arrangements.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("input_path", metavar="GRAPH", help="graph file (a directory for census)")
    parser.add_argument("--format", choices=("edge_list", "graph6"), help="input format (default: by file suffix)")
    parser.add_argument("--cutoff", type=int, help="oracle cutoff degree P (default: max degree + 2)")
    parser.add_argument("--ordering", type=_ordering, help="vertex priority for descending chains, e.g. 3,2,1,4")
    parser.add_argument("--output", choices=("json", "dot", "text"), default="text")
    parser.add_argument("--heuristic", action="store_true", help="poset: run the minimal-poset heuristic")
    parser.add_argument("--minimal", action="store_true", help="generators: prune to a minimal set")
    parser.add_argument("--generators", help="verify: file of derivations, one per line")
    parser.add_argument("--jobs", type=int, default=1, help="census: worker processes")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    if ns.output == "dot" and ns.command != "poset":
        print("sepder: --output dot is only available for poset", file=sys.stderr)
        return EXIT_PARSE
    cfg = RunConfig(
        command=ns.command,
        input_path=ns.input_path,
        format=ns.format,
        cutoff=ns.cutoff,
        ordering=ns.ordering,
        output=ns.output,
        heuristic=ns.heuristic,
        minimal=ns.minimal,
        generators=ns.generators,
        jobs=ns.jobs,
    )
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
