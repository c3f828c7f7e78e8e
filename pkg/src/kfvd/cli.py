"""Command-line front end: solve, enumerate, verify, oracle, gen, knots, bench.

Exit codes: 0 success, 1 invalid input, 2 internal invariant violation (or any
drop-audit violation under --strict).
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from time import perf_counter

from .digraph import (
    InternalInvariantError,
    ParseError,
    find_knots,
    parse_digraph,
    serialize_digraph,
    verify_solution,
)
from .enumerator import enumerate_minimal
from .generators import gen_random, gen_triangles
from .oracle import CapExceededError, oracle_enumerate_minimal, oracle_min
from .reach import Instance, candidate_sinks, drop_value, in_reach_all, surviving_set
from .solver import solve

GROWTH_BOUND = math.log(1.4549)


def _load(path: str):
    return parse_digraph(Path(path).read_text())


def _emit(args, report: dict, text_lines: list[str]) -> None:
    if getattr(args, "json", False):
        print(json.dumps(report, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _stats_lines(stats) -> list[str]:
    return [f"{k}={v}" for k, v in stats.as_dict().items()]


def cmd_solve(args) -> int:
    graph = _load(args.path)
    trace = [] if args.trace else None
    if args.dump_potentials:
        inst = Instance.fresh(graph)
        reach = in_reach_all(graph)
        print("vertex potential drop surviving candidates")
        for v in sorted(graph.vertices):
            print(
                f"{v} {inst.potential[v]} {drop_value(inst, v, reach)}"
                f" {len(surviving_set(inst, v))} {len(candidate_sinks(inst, v, reach))}"
            )
    t0 = perf_counter()
    solution, stats = solve(graph, trace=trace)
    elapsed_ms = (perf_counter() - t0) * 1000.0
    if args.trace and not args.json:
        for depth, sub, vertex, kind, before, after, cost in trace:
            print(f"{depth} {sub} {vertex} {kind} {before} {after} {cost}")
    report = {
        "command": "solve",
        "n": len(graph.vertices),
        "m": graph.num_arcs,
        "opt": solution.size,
        "solution": sorted(solution.deletion_set),
        "sinks": sorted(solution.sink_set),
        "stats": stats.as_dict(),
        "time_ms": elapsed_ms,
    }
    if args.trace:
        report["trace"] = [list(entry) for entry in trace]
    lines = [
        f"n={len(graph.vertices)} m={graph.num_arcs}",
        f"opt={solution.size}",
        "solution=" + ",".join(map(str, sorted(solution.deletion_set))),
        "sinks=" + ",".join(map(str, sorted(solution.sink_set))),
        *_stats_lines(stats),
        f"time_ms={elapsed_ms:.3f}",
    ]
    _emit(args, report, lines)
    if args.strict and stats.drop_violations:
        print(f"strict: {len(stats.drop_violations)} drop violation(s)", file=sys.stderr)
        return 2
    return 0


def cmd_enumerate(args) -> int:
    graph = _load(args.path)
    t0 = perf_counter()
    family = enumerate_minimal(graph)
    elapsed_ms = (perf_counter() - t0) * 1000.0
    report = {
        "command": "enumerate",
        "n": len(graph.vertices),
        "m": graph.num_arcs,
        "sets": [sorted(s) for s in family.sets],
        "count": len(family.sets),
        "leaves": family.leaf_count,
        "time_ms": elapsed_ms,
    }
    lines = [",".join(map(str, sorted(s))) for s in family.sets]
    lines.append(f"count={len(family.sets)} leaves={family.leaf_count}")
    _emit(args, report, lines)
    return 0


def cmd_verify(args) -> int:
    graph = _load(args.path)
    ids = args.solution.strip()
    try:
        solution = frozenset(int(tok) for tok in ids.split(",")) if ids else frozenset()
    except ValueError:
        print(f"error: bad id list: {args.solution!r}", file=sys.stderr)
        return 1
    report_obj = verify_solution(graph, solution, check_minimal=args.minimal)
    report = {
        "command": "verify",
        "n": len(graph.vertices),
        "m": graph.num_arcs,
        "knot_free": report_obj.knot_free,
        "minimal": report_obj.minimal,
        "witness_knot": sorted(report_obj.witness_knot) if report_obj.witness_knot else None,
        "redundant_vertex": report_obj.redundant_vertex,
    }
    lines = [f"knot_free={str(report_obj.knot_free).lower()}"]
    if report_obj.minimal is not None:
        lines.append(f"minimal={str(report_obj.minimal).lower()}")
    if report_obj.witness_knot is not None:
        lines.append("witness_knot=" + ",".join(map(str, sorted(report_obj.witness_knot))))
    if report_obj.redundant_vertex is not None:
        lines.append(f"redundant_vertex={report_obj.redundant_vertex}")
    _emit(args, report, lines)
    return 0


def cmd_oracle(args) -> int:
    graph = _load(args.path)
    if args.enumerate:
        family = oracle_enumerate_minimal(graph, override=args.cap_override)
        report = {
            "command": "oracle",
            "n": len(graph.vertices),
            "m": graph.num_arcs,
            "sets": [sorted(s) for s in family.sets],
            "count": len(family.sets),
        }
        lines = [",".join(map(str, sorted(s))) for s in family.sets]
        lines.append(f"count={len(family.sets)}")
    else:
        solution = oracle_min(graph, override=args.cap_override)
        report = {
            "command": "oracle",
            "n": len(graph.vertices),
            "m": graph.num_arcs,
            "opt": solution.size,
            "solution": sorted(solution.deletion_set),
            "sinks": sorted(solution.sink_set),
        }
        lines = [
            f"opt={solution.size}",
            "solution=" + ",".join(map(str, sorted(solution.deletion_set))),
            "sinks=" + ",".join(map(str, sorted(solution.sink_set))),
        ]
    _emit(args, report, lines)
    return 0


def cmd_gen(args) -> int:
    if args.family == "triangles":
        if args.k is None:
            print("error: --k is required for the triangles family", file=sys.stderr)
            return 1
        graph = gen_triangles(args.k)
    else:
        if args.n is None or args.p is None or args.seed is None:
            print("error: --n, --p and --seed are required for the random family", file=sys.stderr)
            return 1
        graph = gen_random(args.n, args.p, args.seed)
    text = serialize_digraph(graph)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_knots(args) -> int:
    graph = _load(args.path)
    report_obj = find_knots(graph)
    report = {
        "command": "knots",
        "n": len(graph.vertices),
        "m": graph.num_arcs,
        "knots": [sorted(k) for k in report_obj.knots],
        "count": len(report_obj.knots),
    }
    lines = [f"n={len(graph.vertices)} m={graph.num_arcs}", f"knots={len(report_obj.knots)}"]
    lines.extend("knot=" + ",".join(map(str, sorted(k))) for k in report_obj.knots)
    _emit(args, report, lines)
    return 0


def cmd_bench(args) -> int:
    if args.k_max < 1:
        print("error: --k-max must be >= 1", file=sys.stderr)
        return 1
    rows = []
    prev_leaves = None
    for k in range(1, args.k_max + 1):
        graph = gen_triangles(k)
        t0 = perf_counter()
        _, stats = solve(graph)
        elapsed_ms = (perf_counter() - t0) * 1000.0
        n = len(graph.vertices)
        ratio = stats.leaves / prev_leaves if prev_leaves else None
        lograte = math.log(stats.leaves) / n if stats.leaves > 0 else 0.0
        rows.append(
            {
                "k": k,
                "n": n,
                "leaves": stats.leaves,
                "nodes": stats.nodes,
                "ratio": ratio,
                "log_leaves_per_n": lograte,
                "time_ms": elapsed_ms,
            }
        )
        prev_leaves = stats.leaves
    report = {"command": "bench", "family": "triangles", "bound_log": GROWTH_BOUND, "rows": rows}
    lines = [f"family=triangles bound_log={GROWTH_BOUND:.6f}"]
    for r in rows:
        ratio = f"{r['ratio']:.4f}" if r["ratio"] is not None else "-"
        lines.append(
            f"k={r['k']} n={r['n']} leaves={r['leaves']} nodes={r['nodes']}"
            f" ratio={ratio} log_leaves_per_n={r['log_leaves_per_n']:.6f}"
            f" time_ms={r['time_ms']:.3f}"
        )
    _emit(args, report, lines)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kfvd", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="minimum deletion set of an instance file")
    p.add_argument("path")
    p.add_argument("--json", action="store_true")
    p.add_argument("--trace", action="store_true", help="print one line per branch decision")
    p.add_argument("--strict", action="store_true", help="exit 2 on any drop-audit violation")
    p.add_argument("--dump-potentials", action="store_true", help="print the top-level potential table")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("enumerate", help="all inclusion-minimal deletion sets")
    p.add_argument("path")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="check a proposed deletion set")
    p.add_argument("path")
    p.add_argument("--solution", required=True, help="comma-separated vertex ids (empty for the empty set)")
    p.add_argument("--minimal", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="brute-force ground truth")
    p.add_argument("path")
    p.add_argument("--enumerate", action="store_true")
    p.add_argument("--cap-override", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="write a generated instance file")
    p.add_argument("--family", choices=["triangles", "random"], required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("knots", help="list the knots of an instance")
    p.add_argument("path")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_knots)

    p = sub.add_parser("bench", help="leaf growth on the triangle family")
    p.add_argument("--family", choices=["triangles"], default="triangles")
    p.add_argument("--k-max", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InternalInvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
