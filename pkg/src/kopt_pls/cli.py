"""Command-line front end: reduce, solve, map, verify, transition-graph, describe-gadget, metricize."""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from pathlib import Path

from . import gadgets as gd
from .correspondence import cut_to_tour, standard_transition_graph, tour_to_cut
from .errors import BudgetExceeded, ReductionError
from .maxcut import (
    DEFAULT_ENUMERATION_LIMIT,
    Cut,
    cut_value,
    flip_local_search,
    format_cut,
    maxcut_transition_graph,
    parse_cut,
    read_maxcut,
    replay_flips,
)
from .reduction import (
    WORST_CASE_K,
    build_reduction,
    complete_instance,
    from_manifest,
    metricize,
    min_feasible_k,
    to_manifest,
)
from .tsp import PIVOTS, Tour, format_tour, format_tsp, k_opt_local_search, parse_tour, read_tsp
from .verify import CHECKS, DEFAULT_BUDGET, DEFAULT_SAMPLES, DEFAULT_STARTS, run_checks

EXIT_OK, EXIT_FAILURE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
LIMIT_ENV = "KOPT_PLS_ENUMERATION_LIMIT"


def _limit(args) -> int:
    if getattr(args, "limit", None) is not None:
        return args.limit
    return int(os.environ.get(LIMIT_ENV, DEFAULT_ENUMERATION_LIMIT))


def _dump_json(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def _write(path, text: str):
    if path is None or str(path) == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _artifact(args):
    H = read_maxcut(args.instance)
    k = args.k
    if k is None and getattr(args, "paper_strict", False):
        k = max(WORST_CASE_K, min_feasible_k(H))
    if k is not None and getattr(args, "paper_strict", False) and k < WORST_CASE_K:
        raise ReductionError(f"--paper-strict requires k >= {WORST_CASE_K}")
    return build_reduction(H, k)


def cmd_reduce(args) -> int:
    a = _artifact(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "manifest.json").write_text(_dump_json(to_manifest(a)))
    (out / "instance.tsp").write_text(format_tsp(complete_instance(a)))
    s = a.summary()
    print(f"N={s['N']} g_edges={s['g_edges']} non_edges={s['non_edges']} M={s['M']} k={s['k']} "
          f"psi={s['psi_entries']} strict={s['strict']} flexible={s['flexible']}")
    return EXIT_OK


def _trace_json(problem, start, moves, values) -> str:
    return _dump_json({"problem": problem, "start": start, "moves": moves, "objective": [str(v) for v in values]})


def cmd_solve(args) -> int:
    rng = random.Random(args.seed)
    if args.problem == "maxcut":
        H = read_maxcut(args.instance)
        if args.start in (None, "all-first"):
            start = Cut.all_first(H.vertex_count)
        elif args.start == "random":
            start = Cut(tuple(rng.random() < 0.5 for _ in range(H.vertex_count)))
        else:
            start = parse_cut(Path(args.start).read_text(), H.vertex_count)
        end, flips = flip_local_search(H, start, args.pivot)
        values = replay_flips(H, start, flips)
        _write(args.out, format_cut(end))
        if args.trace:
            Path(args.trace).write_text(_trace_json("maxcut", str(start), list(flips), values))
        print(f"value={cut_value(H, end)} flips={len(flips)}", file=sys.stderr if args.out in (None, "-") else sys.stdout)
        return EXIT_OK
    inst = read_tsp(args.instance)
    if args.start in (None, "random"):
        order = list(range(inst.vertex_count))
        rng.shuffle(order)
        start = Tour(tuple(order))
    else:
        start = parse_tour(Path(args.start).read_text(), inst.vertex_count)
    try:
        res = k_opt_local_search(inst, start, args.k, args.pivot, args.budget)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    _write(args.out, format_tour(res.tour))
    if args.trace:
        Path(args.trace).write_text(_trace_json("tsp", str(start), [m.to_json() for m in res.trace], res.weights))
    print(f"weight={res.weights[-1]} swaps={len(res.trace)} candidates={res.candidates}",
          file=sys.stderr if args.out in (None, "-") else sys.stdout)
    return EXIT_OK


def cmd_map(args) -> int:
    a = from_manifest(json.loads(Path(args.manifest).read_text()))
    if args.to_cut:
        tour = parse_tour(Path(args.to_cut).read_text(), a.vertex_count)
        _write(args.out, format_cut(tour_to_cut(a, tour)))
    else:
        cut = parse_cut(Path(args.to_tour).read_text(), a.source.vertex_count)
        _write(args.out, format_tour(cut_to_tour(a, cut)))
    return EXIT_OK


def cmd_verify(args) -> int:
    a = _artifact(args)
    names = args.check or list(CHECKS)
    reports = run_checks(a, names, samples=args.samples, seed=args.seed, starts=args.starts, budget=args.budget)
    for r in reports:
        print(r.render())
    summary = "".join(r.summary_line() + "\n" for r in reports)
    if args.summary:
        Path(args.summary).write_text(summary)
    sys.stdout.write(summary)
    return EXIT_FAILURE if any(r.status == "fail" for r in reports) else EXIT_OK


def cmd_transition_graph(args) -> int:
    limit = _limit(args)
    if args.kind == "maxcut":
        H = read_maxcut(args.instance)
        dot = maxcut_transition_graph(H, limit).to_dot(str, "maxcut")
    else:
        a = _artifact(args)
        graph = standard_transition_graph(a, limit=limit)
        dot = graph.to_dot(lambda t: str(tour_to_cut(a, t)), "standard_tours")
    _write(args.out, dot)
    return EXIT_OK


def cmd_describe_gadget(args) -> int:
    _write(args.out, gd.build_parity_gadget(args.kind).dump())
    return EXIT_OK


def cmd_metricize(args) -> int:
    _write(args.out, format_tsp(metricize(read_tsp(args.instance))))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kopt-pls", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def k_flags(sp):
        sp.add_argument("--k", type=int, default=None, help="swap size (default: smallest feasible)")
        sp.add_argument("--paper-strict", action="store_true",
                        help=f"require k >= {WORST_CASE_K}, enough for any degree-5 input")

    sp = sub.add_parser("reduce", help="compile a Max-Cut file into a TSP instance")
    sp.add_argument("instance")
    k_flags(sp)
    sp.add_argument("--out", required=True, help="output directory")
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("solve", help="run Flip or k-Opt local search")
    sp.add_argument("problem", choices=("maxcut", "tsp"))
    sp.add_argument("instance")
    sp.add_argument("--start", help="solution file, 'random', or 'all-first' (maxcut)")
    sp.add_argument("--pivot", choices=PIVOTS, default="first")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--k", type=int, default=3)
    sp.add_argument("--budget", type=int, default=None, help="candidate evaluations over the run")
    sp.add_argument("--out", default="-")
    sp.add_argument("--trace")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("map", help="map a tour to its cut or a cut to its tour")
    sp.add_argument("--manifest", required=True)
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--to-cut", metavar="TOUR_FILE")
    g.add_argument("--to-tour", metavar="CUT_FILE")
    sp.add_argument("--out", default="-")
    sp.set_defaults(func=cmd_map)

    sp = sub.add_parser("verify", help="run the lemma checks on a reduced instance")
    sp.add_argument("instance")
    k_flags(sp)
    sel = sp.add_mutually_exclusive_group()
    sel.add_argument("--all", action="store_true", help="run every check (the default)")
    sel.add_argument("--check", action="append", choices=sorted(CHECKS))
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    sp.add_argument("--starts", type=int, default=DEFAULT_STARTS)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--summary", help="write one summary line per check here")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("transition-graph", help="emit a transition graph as DOT")
    sp.add_argument("instance", help="Max-Cut file")
    sp.add_argument("--kind", choices=("maxcut", "tsp"), default="maxcut")
    k_flags(sp)
    sp.add_argument("--limit", type=int, default=None, help=f"H-vertex limit (env {LIMIT_ENV})")
    sp.add_argument("--out", default="-")
    sp.set_defaults(func=cmd_transition_graph)

    sp = sub.add_parser("describe-gadget", help="dump a parity gadget as 'u v role' lines")
    sp.add_argument("kind", choices=(gd.STRICT, gd.FLEXIBLE))
    sp.add_argument("--out", default="-")
    sp.set_defaults(func=cmd_describe_gadget)

    sp = sub.add_parser("metricize", help="shift all weights so the triangle inequality holds")
    sp.add_argument("instance")
    sp.add_argument("--out", default="-")
    sp.set_defaults(func=cmd_metricize)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ReductionError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
