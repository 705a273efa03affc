"""Command-line front end: test, gen, orbits, bench."""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict

from . import families
from .bench import BenchPlan, record_to_json, run_bench, summary_to_json
from .graph import GraphFormatError, load_graph, save_graph
from .matching import SearchTimeout, are_isomorphic
from .orbits import find_automorphisms
from .sequence import backtrack_amount, dump_sequence, generate_sequence

EXIT_ISOMORPHIC = 0
EXIT_NOT_ISOMORPHIC = 1
EXIT_ERROR = 2


def _read_graph(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return load_graph(fh.read())
    except OSError as exc:
        raise SystemExit(f"graphiso: cannot read {path}: {exc}") from exc
    except GraphFormatError as exc:
        raise SystemExit(f"graphiso: {path}: {exc}") from exc


def _cmd_test(args) -> int:
    g = _read_graph(args.graph1)
    h = _read_graph(args.graph2)
    if args.trace:
        sys.stderr.write(dump_sequence(generate_sequence(g)))
        sys.stderr.write(dump_sequence(generate_sequence(h)))
    deadline = time.monotonic() + args.timeout if args.timeout else None
    try:
        outcome = are_isomorphic(
            g,
            h,
            backjump=not args.no_backjump,
            orbit_pruning=not args.no_orbit_pruning,
            deadline=deadline,
        )
    except SearchTimeout:
        print("timeout", file=sys.stderr)
        return EXIT_ERROR
    if args.json:
        payload = {
            "isomorphic": outcome.decision,
            "level": outcome.level,
            "mapping": list(outcome.mapping) if outcome.mapping else None,
            "stats": asdict(outcome.stats),
        }
        print(json.dumps(payload))
    else:
        print("isomorphic" if outcome.decision else "not isomorphic")
        if args.mapping and outcome.mapping is not None:
            for u, v in enumerate(outcome.mapping):
                print(f"{u} -> {v}")
        if args.stats:
            print(json.dumps(asdict(outcome.stats)))
    return EXIT_ISOMORPHIC if outcome.decision else EXIT_NOT_ISOMORPHIC


def _cmd_orbits(args) -> int:
    g = _read_graph(args.graph)
    extended = find_automorphisms(g, generate_sequence(g))
    classes = extended.orbits.classes()
    if args.json:
        print(json.dumps([list(c) for c in classes]))
    else:
        for cls in classes:
            print(" ".join(str(v) for v in cls))
    return EXIT_ISOMORPHIC


def _write_graph(graph, out: str | None) -> None:
    text = save_graph(graph)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_gen(args) -> int:
    part_b = args.part == "b"
    if args.family == "random":
        from .oracle import random_digraph

        graph = random_digraph(args.n, args.p, args.seed)
    elif args.family == "srg-join":
        types = families.srg_join_types(args.copies, args.negative and part_b)
        graph = families.build_srg_join(types, args.seed * 2 + (2 if part_b else 1))
    elif args.family == "tripartite":
        spec = families.FamilySpec(
            "tripartite",
            {"alpha": args.alpha, "beta": args.beta},
            directed=not args.undirected,
            negative=args.negative and part_b,
            seed=args.seed * 2 + (2 if part_b else 1),
            k=args.k,
        )
        graph = families.tripartite_union(spec)
    elif args.family == "two-level":
        base_a, base_b = families.two_level_base_pair()
        graph = families.two_level_family(
            base_a, base_b, args.n, args.m, negative=args.negative and part_b
        )
        graph = families._relabel(graph, args.seed * 2 + (2 if part_b else 1))
    else:
        raise SystemExit(f"graphiso: unknown family {args.family!r}")
    _write_graph(graph, args.output)
    return EXIT_ISOMORPHIC


def _cmd_bench(args) -> int:
    plan = BenchPlan(
        family=args.family,
        sizes=args.sizes.split(","),
        instances=args.instances,
        seed=args.seed,
        polarities=(True, False) if args.polarity == "both" else (args.polarity == "pos",),
        timeout=args.timeout,
        compare_backjump=args.compare_backjump,
        tripartite_k=args.k,
        tripartite_directed=not args.undirected,
    )
    sink = open(args.records, "w", encoding="utf-8") if args.records else None
    try:
        def emit(record):
            line = record_to_json(record)
            if sink:
                sink.write(line + "\n")
            if not args.quiet:
                print(line)

        records, summary = run_bench(plan, on_record=emit)
    finally:
        if sink:
            sink.close()
    text = summary_to_json(summary)
    if args.summary:
        with open(args.summary, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_ISOMORPHIC


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphiso",
        description="Graph isomorphism testing with refinement sequences and backjumping",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_test = sub.add_parser("test", help="test two graph files for isomorphism")
    p_test.add_argument("graph1")
    p_test.add_argument("graph2")
    p_test.add_argument("--mapping", action="store_true", help="print 'u -> v' lines on success")
    p_test.add_argument("--stats", action="store_true", help="print search counters as JSON")
    p_test.add_argument("--json", action="store_true", help="machine-readable output")
    p_test.add_argument("--trace", action="store_true", help="dump both refinement sequences")
    p_test.add_argument("--no-backjump", action="store_true")
    p_test.add_argument("--no-orbit-pruning", action="store_true")
    p_test.add_argument("--timeout", type=float, default=None, help="seconds")
    p_test.set_defaults(func=_cmd_test)

    p_orbits = sub.add_parser("orbits", help="print discovered vertex equivalence classes")
    p_orbits.add_argument("graph")
    p_orbits.add_argument("--json", action="store_true")
    p_orbits.set_defaults(func=_cmd_orbits)

    p_gen = sub.add_parser("gen", help="generate a family instance graph")
    gen_sub = p_gen.add_subparsers(dest="family", required=True)

    g_random = gen_sub.add_parser("random", help="seeded random digraph")
    g_random.add_argument("--n", type=int, required=True)
    g_random.add_argument("--p", type=float, required=True)

    g_srg = gen_sub.add_parser("srg-join", help="complete join of 16-vertex SRGs")
    g_srg.add_argument("--copies", type=int, required=True)

    g_tri = gen_sub.add_parser("tripartite", help="union of tripartite digraph components")
    g_tri.add_argument("--alpha", type=int, default=1)
    g_tri.add_argument("--beta", type=int, default=1)
    g_tri.add_argument("--k", type=int, default=5)
    g_tri.add_argument("--undirected", action="store_true")

    g_two = gen_sub.add_parser("two-level", help="two-level-connected components")
    g_two.add_argument("--n", type=int, required=True)
    g_two.add_argument("--m", type=int, required=True)

    for g_sub in (g_random, g_srg, g_tri, g_two):
        g_sub.add_argument("--seed", type=int, default=0)
        g_sub.add_argument("--negative", action="store_true",
                           help="swap one component in the 'b' part")
        g_sub.add_argument("--part", choices=("a", "b"), default="a",
                           help="which member of the instance pair to emit")
        g_sub.add_argument("-o", "--output", default=None)
        g_sub.set_defaults(func=_cmd_gen)

    p_bench = sub.add_parser("bench", help="run a benchmark plan")
    p_bench.add_argument("--family", choices=("srg-join", "tripartite", "two-level"), required=True)
    p_bench.add_argument("--sizes", required=True, help="comma-separated size parameters")
    p_bench.add_argument("--instances", type=int, default=3)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--polarity", choices=("pos", "neg", "both"), default="both")
    p_bench.add_argument("--timeout", type=float, default=10.0)
    p_bench.add_argument("--compare-backjump", action="store_true")
    p_bench.add_argument("--k", type=int, default=5, help="tripartite part size")
    p_bench.add_argument("--undirected", action="store_true")
    p_bench.add_argument("--records", default=None, help="JSONL output path")
    p_bench.add_argument("--summary", default=None, help="summary JSON path")
    p_bench.add_argument("--quiet", action="store_true")
    p_bench.set_defaults(func=_cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except SystemExit as exc:
        if exc.code not in (0, None) and not isinstance(exc.code, int):
            print(exc.code, file=sys.stderr)
            return EXIT_ERROR
        return exc.code or 0
    except GraphFormatError as exc:
        print(f"graphiso: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
