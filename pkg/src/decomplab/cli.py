"""Command-line entry point: one process per command, JSON on stdout,
diagnostics on stderr.  Exact fractions are encoded as {"num", "den"}."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .classifier import classify_bipartite, classify_vx, discretisation_candidates
from .divisibility import check_divisibility, fix_edge_count, make_degree_divisible
from .errors import DecompLabError, ParseError
from .extremal import generate_extremal, obstruction_check
from .gadgets import (build_absorber, build_c4_switcher, build_c6_switcher,
                      build_k2r_switcher, build_partite_neighbourhood_absorber,
                      build_teleporter, build_transformer, verify_switcher)
from .graphio import (parse_edge_list, serialize_certificate,
                      serialize_edge_list)
from .graphs import GraphMap
from .invariants import (THETA_UNDEFINED, bipartite_invariants, cn_tuples,
                         colouring_invariants, degree_gcd)
from .pipeline import cover_down, find_vortex, verify_vortex
from .solver import (INDETERMINATE, SAT, cover_vertex, exact_decompose,
                     fractional_decompose, greedy_decompose,
                     verify_decomposition)

EXIT_OK = 0
EXIT_UNSAT = 1
EXIT_INDETERMINATE = 2
EXIT_USAGE = 64
EXIT_FILE = 66
EXIT_ERROR = 70


@dataclass
class CommandResult:
    status: str
    payload: dict = field(default_factory=dict)
    diagnostics: list = field(default_factory=list)
    exit_code: int = 0


def _frac(x) -> dict:
    fr = Fraction(x)
    return {"num": fr.numerator, "den": fr.denominator}


def _load_graph(path: str):
    try:
        with open(path) as fh:
            return parse_edge_list(fh.read())
    except OSError as exc:
        raise FileNotFoundError(str(exc))


def _report_payload(rep) -> dict:
    out = {"quantity": rep.quantity, "kind": rep.kind, "rule": rep.rule,
           "assumptions": rep.assumptions}
    if rep.value is not None:
        out["value"] = _frac(rep.value)
    if rep.interval:
        out["interval"] = [_frac(v) for v in rep.interval]
    if rep.value_set:
        out["value_set"] = [v if isinstance(v, str) else _frac(v)
                            for v in rep.value_set]
    return out


def _parse_fraction(s: str) -> Fraction:
    return Fraction(s)


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="decomplab",
        description="graph edge-decomposition laboratory")
    top.add_argument("--seed", type=int, default=0)
    top.add_argument("--timeout", type=float, default=60.0)
    top.add_argument("--threads", type=int, default=1,
                     help="accepted for interface stability; solvers run "
                          "single-threaded for determinism")
    top.add_argument("--format", choices=("json", "text"), default="json")
    sub = top.add_subparsers(dest="command")

    p = sub.add_parser("invariants", help="pattern-side parameters")
    p.add_argument("graph")
    p.add_argument("--bipartite", action="store_true")
    p.add_argument("--colouring", action="store_true")
    p.add_argument("--cn", type=int, metavar="S")

    p = sub.add_parser("classify", help="threshold values")
    p.add_argument("graph")
    p.add_argument("--delta-e", type=_parse_fraction, default=None)
    p.add_argument("--vertex-cover", action="store_true",
                   help="report the star-cover threshold instead")
    p.add_argument("--candidates", action="store_true",
                   help="report discretisation candidates instead")

    p = sub.add_parser("solve", help="exact/fractional decomposition")
    p.add_argument("--pattern", required=True)
    p.add_argument("--host", required=True)
    p.add_argument("--fractional", action="store_true")
    p.add_argument("--rational", action="store_true",
                   help="exact arithmetic for the fractional mode")
    p.add_argument("--vertex", type=int, default=None,
                   help="cover all edges at this vertex instead")
    p.add_argument("--greedy", action="store_true")

    p = sub.add_parser("fix", help="divisibility repairs")
    p.add_argument("--pattern", required=True)
    p.add_argument("--host", required=True)
    p.add_argument("--mode", choices=("degree", "edges"), required=True)
    p.add_argument("--modulus", type=int, default=None,
                   help="degree mode: residue modulus (default: pattern gcd)")
    p.add_argument("--target", type=int, default=0,
                   help="edges mode: target edge count residue")

    p = sub.add_parser("gadget", help="certified gadget construction")
    gsub = p.add_subparsers(dest="gadget_command")
    b = gsub.add_parser("build")
    b.add_argument("--kind", required=True,
                   choices=("c4", "c6", "k2r", "teleporter", "transformer",
                            "absorber", "partite-abs"))
    b.add_argument("--pattern", required=True)
    b.add_argument("--r", type=int, default=None)
    b.add_argument("--strategy", choices=("general", "bipartite"),
                   default="general")
    b.add_argument("--mode", choices=("internal", "external"),
                   default="internal")
    b.add_argument("--leftover", default=None,
                   help="transformer/absorber: edge-list file")
    b.add_argument("--b", type=int, default=1)

    p = sub.add_parser("extremal", help="lower-bound families")
    p.add_argument("--pattern", required=True)
    p.add_argument("--family", required=True,
                   choices=("tau23", "halves", "space", "theta"))
    p.add_argument("--scale", type=int, required=True)

    p = sub.add_parser("pipeline", help="vortex cover-down")
    p.add_argument("--pattern", required=True)
    p.add_argument("--host", required=True)
    p.add_argument("--mu", type=_parse_fraction, required=True)
    p.add_argument("--final-size", type=int, required=True)
    p.add_argument("--delta", type=_parse_fraction, default=None)
    p.add_argument("--report", default=None)
    return top


def run(argv, stdin=b"") -> CommandResult:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return CommandResult("error", {"error": "usage"},
                             ["unrecognised arguments"], EXIT_USAGE)
    if not args.command:
        return CommandResult("error", {"error": "usage"},
                             ["missing subcommand"], EXIT_USAGE)
    try:
        return _dispatch(args)
    except FileNotFoundError as exc:
        return CommandResult("error", {"error": str(exc)}, [], EXIT_FILE)
    except ParseError as exc:
        return CommandResult("error", {"error": str(exc)}, [], EXIT_FILE)
    except DecompLabError as exc:
        return CommandResult("error",
                             {"error": str(exc),
                              "type": type(exc).__name__}, [], EXIT_ERROR)


def _dispatch(args) -> CommandResult:
    if args.command == "invariants":
        return _cmd_invariants(args)
    if args.command == "classify":
        return _cmd_classify(args)
    if args.command == "solve":
        return _cmd_solve(args)
    if args.command == "fix":
        return _cmd_fix(args)
    if args.command == "gadget":
        return _cmd_gadget(args)
    if args.command == "extremal":
        return _cmd_extremal(args)
    if args.command == "pipeline":
        return _cmd_pipeline(args)
    return CommandResult("error", {"error": "usage"}, [], EXIT_USAGE)


def _cmd_invariants(args) -> CommandResult:
    g = _load_graph(args.graph)
    payload = {"vertices": g.n, "edges": g.e, "degree_gcd": degree_gcd(g)}
    if args.bipartite or not (args.colouring or args.cn):
        if g.is_bipartite() and g.e >= 2:
            inv = bipartite_invariants(g)
            payload["bipartite"] = {
                "tau": inv.tau, "tau_tilde": inv.tau_tilde,
                "bridges": [list(e) for e in inv.bridge_edges],
                "component_edge_counts": inv.component_edge_counts,
            }
        elif args.bipartite:
            inv = bipartite_invariants(g)   # raises with the odd cycle
    if args.colouring:
        inv = colouring_invariants(g)
        payload["colouring"] = {
            "chi": inv.chi,
            "chi_critical": _frac(inv.chi_cr),
            "sigma": inv.sigma,
            "chi_vertex": _frac(inv.chi_vx),
            "theta": None if inv.theta is THETA_UNDEFINED else inv.theta,
        }
    if args.cn:
        tuples = cn_tuples(g, args.cn)
        payload["cn_tuples"] = sorted(t.degrees for t in tuples)
    return CommandResult("ok", payload)


def _cmd_classify(args) -> CommandResult:
    g = _load_graph(args.graph)
    if args.vertex_cover:
        rep = classify_vx(g, args.delta_e)
    elif args.candidates:
        rep = discretisation_candidates(g)
    else:
        rep = classify_bipartite(g)
    payload = _report_payload(rep)
    if rep.quantity == "decomposition_threshold" and rep.kind == "exact":
        payload["delta_F"] = _frac(rep.value)
    return CommandResult("ok", payload)


def _cmd_solve(args) -> CommandResult:
    f = _load_graph(args.pattern)
    g = _load_graph(args.host)
    if args.fractional:
        mode = "rational" if args.rational else "float"
        res = fractional_decompose(f, g, mode=mode)
        if res.status == "feasible":
            sol = res.solution
            payload = {"status": "feasible",
                       "copies": len(sol.copies),
                       "weights": [(_frac(w) if mode == "rational" else w)
                                   for w in sol.weights]}
            return CommandResult("ok", payload)
        return CommandResult("unsat", {"status": "infeasible"}, [],
                             EXIT_UNSAT)
    if args.greedy:
        out = greedy_decompose(f, g, seed=args.seed)
        return CommandResult("ok", {"copies": len(out.copies),
                                    "leftover_edges": out.leftover.e})
    if args.vertex is not None:
        res = cover_vertex(f, g, args.vertex, timeout=args.timeout)
    else:
        res = exact_decompose(f, g, timeout=args.timeout)
    if res.status == SAT:
        ok, why = verify_decomposition(res.decomposition)
        payload = json.loads(serialize_certificate(res.decomposition))
        return CommandResult("ok", payload, [] if ok else [why or ""])
    if res.status == INDETERMINATE:
        return CommandResult("indeterminate", {"status": res.status}, [],
                             EXIT_INDETERMINATE)
    payload = {"status": res.status}
    if res.report is not None and hasattr(res.report, "degree_residues"):
        payload["edge_residue"] = res.report.edge_residue
        payload["degree_residues"] = {
            str(k): v for k, v in res.report.degree_residues.items()}
    elif isinstance(res.report, dict):
        payload.update(res.report)
    return CommandResult("unsat", payload, [], EXIT_UNSAT)


def _cmd_fix(args) -> CommandResult:
    f = _load_graph(args.pattern)
    g = _load_graph(args.host)
    if args.mode == "degree":
        r = args.modulus or degree_gcd(f)
        xi = {v: 0 for v in range(g.n)}
        h = make_degree_divisible(g, r, xi, seed=args.seed)
    else:
        h = fix_edge_count(g, list(range(g.n)), f, args.target,
                           seed=args.seed)
    return CommandResult("ok", {"removed": serialize_edge_list(h),
                                "removed_edges": h.e,
                                "max_degree": h.max_degree()})


def _cmd_gadget(args) -> CommandResult:
    if args.gadget_command != "build":
        return CommandResult("error", {"error": "usage"}, [], EXIT_USAGE)
    f = _load_graph(args.pattern)
    kind = args.kind
    if kind == "c4":
        sw = build_c4_switcher(f)
    elif kind == "c6":
        sw = build_c6_switcher(f, args.strategy)
    elif kind == "k2r":
        r = args.r or degree_gcd(f)
        sw = build_k2r_switcher(f, r)
    elif kind == "teleporter":
        sw = build_teleporter(f, args.mode)
    elif kind == "transformer":
        h = _load_graph(args.leftover)
        tr = build_transformer(f, h, GraphMap(h, h, tuple(range(h.n))))
        from .gadgets import verify_transformer
        ok, why = verify_transformer(tr)
        return CommandResult("ok" if ok else "error", {
            "kind": "transformer", "vertices": tr.t.n, "edges": tr.t.e,
            "verified": ok, "violation": why})
    elif kind == "absorber":
        h = _load_graph(args.leftover)
        ab = build_absorber(f, h)
        from .gadgets import verify_absorber
        ok, why = verify_absorber(ab)
        return CommandResult("ok" if ok else "error", {
            "kind": "absorber", "vertices": ab.a.n, "edges": ab.a.e,
            "verified": ok, "violation": why})
    else:
        pa = build_partite_neighbourhood_absorber(f, args.b)
        return CommandResult("ok", {
            "kind": "partite-abs", "vertices": pa.graph.n,
            "bundle": len(pa.w), "centre": pa.x})
    ok, why = verify_switcher(sw)
    payload = {
        "kind": kind,
        "graph": {"n": sw.model.graph.n,
                  "edges": [list(e) for e in sorted(sw.model.graph.edges)]},
        "vertices": sw.model.graph.n,
        "edges": sw.model.graph.e,
        "roots": list(sw.model.roots),
        "e1": sorted(list(e) for e in sw.e1),
        "e2": sorted(list(e) for e in sw.e2),
        "cert1": json.loads(serialize_certificate(sw.cert1)),
        "cert2": json.loads(serialize_certificate(sw.cert2)),
        "verified": ok,
    }
    if sw.compression is not None:
        payload["compression_width"] = sw.compression.d
    return CommandResult("ok" if ok else "error", payload,
                         [] if ok else [why or ""])


def _cmd_extremal(args) -> CommandResult:
    f = _load_graph(args.pattern)
    family = {"tau23": "tau_23"}.get(args.family, args.family)
    inst = generate_extremal(f, family, args.scale)
    payload = {"graph": serialize_edge_list(inst.graph),
               "vertices": inst.graph.n, "edges": inst.graph.e,
               "report": {k: str(v) for k, v in inst.report.items()}}
    if inst.certificate:
        cert = inst.certificate
        payload["certificate"] = {
            "kind": cert.kind, "region": sorted(cert.region),
            "modulus": cert.modulus, "residue": cert.residue,
            "checked": obstruction_check(f, inst.graph, cert)}
    return CommandResult("ok", payload)


def _cmd_pipeline(args) -> CommandResult:
    f = _load_graph(args.pattern)
    g = _load_graph(args.host)
    delta = args.delta
    if delta is None:
        delta = Fraction(g.min_degree(), max(g.n, 1))
    vor = find_vortex(g, delta, args.mu, args.final_size, seed=args.seed)
    res = cover_down(f, g, vor, seed=args.seed)
    payload = {"levels": vor.depth, "final_size": vor.m,
               "success": res.success,
               "copies": len(res.copies),
               "leftover_edges": res.leftover.e,
               "stats": res.stats}
    if args.report:
        with open(args.report, "w") as fh:
            json.dump(payload, fh, indent=2)
    return CommandResult("ok" if res.success else "error", payload)


def main(argv=None) -> int:
    result = run(argv if argv is not None else sys.argv[1:])
    out = {"status": result.status, **result.payload}
    print(json.dumps(out, indent=None, default=str))
    for line in result.diagnostics:
        print(line, file=sys.stderr)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
