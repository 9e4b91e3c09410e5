"""Command-line entry point: ``bhturan <command> [options]``.

Exit codes: 0 success, 1 violations found, 2 usage or input parse error,
3 I/O failure. A report is written on exits 0 and 1.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import graph as G
from .canon import CANON_LIMIT, canonical_form
from .core_eta import FAILS, proof_replay
from .errors import BHTuranError
from .graph6 import from_graph6, to_graph6
from .reports import Graph6FileError, Report, emit_report, ingest_graph6_file
from .search import (
    bn_conjecture_scan,
    bound_scan,
    fan_conjecture_scan,
    local_search,
    turan_number,
    VIOLATION_TOL,
)
from .spectral import DENSE_LIMIT, check_main_bound, perron, perron_bounds_hold, top_two_eigenvalues

FAMILIES = {
    "complete": (G.complete, 1),
    "path": (G.path, 1),
    "cycle": (G.cycle, 1),
    "empty": (G.empty, 1),
    "split": (G.split_graph, 2),
    "friendship": (G.friendship, 1),
    "fan": (G.fan, 1),
    "extremal": (G.extremal_candidate, 2),
    "bipartite-plus-edge": (G.bipartite_plus_edge, 2),
    "complete-multipartite": (G.complete_multipartite, None),
}


class UsageError(Exception):
    pass


def _sort_key(rec: dict) -> tuple:
    g = from_graph6(rec["graph6"])
    key = canonical_form(g).decode() if g.n <= CANON_LIMIT else rec["graph6"]
    return (key, str(rec.get("id", "")))


def _sources(args) -> list[tuple[str, G.Graph]]:
    out = []
    if getattr(args, "input", None):
        out += [(f"L{ln}", g) for ln, g in ingest_graph6_file(args.input)]
    for i, s in enumerate(getattr(args, "graph6", None) or [], start=1):
        out.append((f"arg{i}", from_graph6(s)))
    t = getattr(args, "t", None)
    if t is not None:
        out.append((f"extremal({args.k},{t})", G.extremal_candidate(args.k, t)))
    return out


def _need_sources(args) -> list[tuple[str, G.Graph]]:
    src = _sources(args)
    if not src and not getattr(args, "input", None):
        raise UsageError("give --input, --graph6 or --t")
    return src


# -- command handlers: each returns (records, summary, violations_found) --------

def cmd_construct(args):
    fn, arity = FAMILIES[args.family]
    if arity is not None and len(args.params) != arity:
        raise UsageError(f"family {args.family} takes {arity} integer parameter(s)")
    g = fn(*args.params)
    rec = {"id": args.family, "graph6": to_graph6(g), "n": g.n, "m": g.m, "params": list(args.params), "degrees": g.degrees()}
    return [rec], {"count": 1}, False


def cmd_spectrum(args):
    recs = []
    for gid, g in _need_sources(args):
        rec = {"id": gid, "graph6": to_graph6(g), "n": g.n, "m": g.m}
        if g.n:
            cert = perron(g, tol=args.tol, max_iter=args.max_iter)
            rec.update(rho=cert.rho, ustar=cert.ustar, residual=cert.residual, iterations=cert.iterations,
                       x=list(cert.x), perron_bounds=perron_bounds_hold(g, cert))
        if 2 <= g.n <= DENSE_LIMIT:
            rec["lambda1"], rec["lambda2"] = top_two_eigenvalues(g)
        recs.append(rec)
    return recs, {"count": len(recs)}, False


def cmd_check_bound(args):
    recs = []
    bad = 0
    for gid, g in _need_sources(args):
        rep = check_main_bound(g, args.k, rho=perron(g, tol=args.tol, max_iter=args.max_iter).rho if g.n else 0.0)
        d = rep.to_dict()
        d["violation"] = bool(rep.fk_free and rep.slack_plus is not None and rep.slack_plus < -VIOLATION_TOL)
        bad += d["violation"]
        recs.append({"id": gid, "graph6": to_graph6(g), "n": g.n, **d})
    return recs, {"count": len(recs), "violations": bad}, bad > 0


def cmd_replay(args):
    recs = []
    bad = 0
    for gid, g in _need_sources(args):
        rep = proof_replay(g, args.k, cert=perron(g, tol=args.tol, max_iter=args.max_iter), graph_id=gid)
        d = rep.to_dict()
        d["graph6"] = to_graph6(g)
        d["id"] = d.pop("graph_id")
        bad += any(v == FAILS for v in rep.lemmas.values())
        recs.append(d)
    return recs, {"count": len(recs), "failed_checks": bad}, bad > 0


def _scan_output(res):
    d = res.to_dict()
    summary = {"per_m": d["summary"], "total": d["total"], "violations": len(d["violations"]), "params": d["params"]}
    return d["violations"], summary, bool(d["violations"])


def cmd_scan(args):
    return _scan_output(bound_scan(args.k, args.n_max, workers=args.workers))


def cmd_bn_scan(args):
    return _scan_output(bn_conjecture_scan(args.n_max, workers=args.workers))


def cmd_fan_scan(args):
    return _scan_output(fan_conjecture_scan(args.k, args.n_max, variant=args.variant, workers=args.workers))


def cmd_turan(args):
    res = turan_number(args.n, args.predicate)
    recs = [{"id": f"w{i}", "graph6": s, "n": res.n, "m": res.max_edges} for i, s in enumerate(res.witnesses, start=1)]
    return recs, res.to_dict(), False


def cmd_search(args):
    start = None
    if args.plant_t is not None:
        start = G.extremal_candidate(args.k, args.plant_t)
    elif args.input:
        graphs = ingest_graph6_file(args.input)
        if not graphs:
            raise UsageError("search --input file holds no graph")
        start = graphs[0][1]
    rec = local_search(args.k, args.n, args.m, seed=args.seed, steps=args.steps, start=start).to_dict()
    rec["id"] = f"seed{args.seed}"
    return [rec], {"best_rho": rec["rho"], "violation": rec["flags"]["violation"]}, bool(rec["flags"]["violation"])


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="report path (default: stdout)")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--tol", type=float, default=1e-10, help="Perron residual tolerance")
    common.add_argument("--max-iter", type=int, default=10**6)

    graphs_in = argparse.ArgumentParser(add_help=False)
    graphs_in.add_argument("--input", "-i", help="graph6 file, one graph per line")
    graphs_in.add_argument("--graph6", action="append", help="inline graph6 record (repeatable)")

    workers = argparse.ArgumentParser(add_help=False)
    workers.add_argument("--workers", type=int, default=1)

    p = argparse.ArgumentParser(prog="bhturan", description="Friendship-free spectral extremal experiments.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("construct", parents=[common], help="build a named graph")
    s.add_argument("family", choices=sorted(FAMILIES))
    s.add_argument("params", type=int, nargs="*")
    s.set_defaults(handler=cmd_construct)

    s = sub.add_parser("spectrum", parents=[common, graphs_in], help="Perron data and top eigenvalues")
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--t", type=int)
    s.set_defaults(handler=cmd_spectrum)

    s = sub.add_parser("check-bound", parents=[common, graphs_in], help="evaluate the friendship bound")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--t", type=int, help="check K_k v tK_1")
    s.set_defaults(handler=cmd_check_bound)

    s = sub.add_parser("replay", parents=[common, graphs_in], help="run the proof-replay diagnostics")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--t", type=int)
    s.set_defaults(handler=cmd_replay)

    s = sub.add_parser("scan", parents=[common, workers], help="exhaustive friendship-bound scan")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--n-max", type=int, required=True)
    s.set_defaults(handler=cmd_scan)

    s = sub.add_parser("turan", parents=[common], help="brute-force Turan number")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--predicate", required=True, help="e.g. 'kk2_free(2)', 'fk_free(2)', 'triangle_free'")
    s.set_defaults(handler=cmd_turan)

    s = sub.add_parser("bn-scan", parents=[common, workers], help="lambda1^2 + lambda2^2 scan")
    s.add_argument("--n-max", type=int, required=True)
    s.set_defaults(handler=cmd_bn_scan)

    s = sub.add_parser("fan-scan", parents=[common, workers], help="fan-free bound scan")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--n-max", type=int, required=True)
    s.add_argument("--variant", choices=("odd", "even"), default="odd")
    s.set_defaults(handler=cmd_fan_scan)

    s = sub.add_parser("search", parents=[common], help="edge-rotation local search")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--steps", type=int, default=1000)
    s.add_argument("--plant-t", type=int, help="start from K_k v tK_1")
    s.add_argument("--input", "-i", help="start from the first graph of a graph6 file")
    s.set_defaults(handler=cmd_search)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.tol <= 0:
        print("error: --tol must be positive", file=sys.stderr)
        return 2
    if getattr(args, "workers", 1) < 1:
        print("error: --workers must be >= 1", file=sys.stderr)
        return 2

    config = {k: v for k, v in sorted(vars(args).items()) if k != "handler"}
    t0 = time.perf_counter()
    try:
        records, summary, violations = args.handler(args)
    except Graph6FileError as exc:
        for ln, msg in exc.errors:
            print(f"error: line {ln}: {msg}", file=sys.stderr)
        return 2
    except (UsageError, BHTuranError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3

    records = sorted(records, key=_sort_key)
    report = Report(args.command, config, records, summary, round(time.perf_counter() - t0, 6))
    try:
        text = emit_report(report, args.format, args.output)
    except OSError as exc:
        print(f"error: cannot write report: {exc}", file=sys.stderr)
        return 3
    if args.output is None:
        sys.stdout.write(text)
    return 1 if violations else 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
