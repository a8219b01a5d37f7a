"""Command-line entry point.

Exit codes: 0 clean, 2 counterexample or violation found, 3 precondition or
capacity error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import harness
from .genlib import EnumerationCapError, IngestError, enumerate_graphs, ingest, write_graph6
from .graph import GraphError, parse_graph6, to_graph6
from .ocycle import realize_traced, validate_ocycle
from .patterns import PATTERN_NAMES

EXIT_OK, EXIT_FOUND, EXIT_PRECONDITION = 0, 2, 3


def _filter(name: str) -> str:
    return {"2conn": "two_connected"}.get(name, name)


def cmd_enumerate(args) -> int:
    stream = enumerate_graphs(args.n, _filter(args.filter), args.cache)
    if args.out:
        count = write_graph6(stream, args.out)
    else:
        count = 0
        for g in stream:
            print(to_graph6(g))
            count += 1
    print(f"{stream.provenance}: {count} graphs", file=sys.stderr)
    return EXIT_OK


def cmd_classify(args) -> int:
    if args.inp:
        stream = ingest(args.inp)
    else:
        stream = enumerate_graphs(args.gen, _filter(args.filter), args.cache)
    count = harness.classify_stream(stream, args.out)
    print(f"{stream.provenance}: {count} profiles -> {args.out}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    specs = harness.get_suite(args.theorem)
    records = harness.run_suite(specs, args.n_max, args.inp, args.n_min, args.cache)
    harness.write_jsonl(args.report, (r.to_json() for r in records))
    found = False
    for r in records:
        status = "clean" if not r.counterexamples else f"{len(r.counterexamples)} counterexamples"
        if not r.expected_empty and r.counterexamples:
            status = f"{len(r.counterexamples)} findings (open question)"
        extra = f", {len(r.below_floor)} below floor" if r.below_floor else ""
        print(f"{r.theorem:10s} {r.hypothesis:22s} scanned={r.scanned} hits={r.hits} "
              f"{status}{extra} [{r.wall_time:.1f}s]")
        found |= not r.clean
    return EXIT_FOUND if found else EXIT_OK


def cmd_separate(args) -> int:
    res = harness.search_separation(args.pattern, args.direction, args.n_max, args.cache)
    line = res.to_json()
    print(line)
    if args.report:
        harness.write_jsonl(args.report, [line])
    return EXIT_OK


def cmd_monotone(args) -> int:
    res = harness.search_monotonicity(args.smaller, args.larger, args.kind, args.n_max, args.cache)
    print(res.to_json())
    return EXIT_OK


def cmd_reverse(args) -> int:
    entries = harness.reverse_witnesses(args.n_max, args.witnesses, args.cache)
    lines = [json.dumps(e, sort_keys=True) for e in entries]
    for line in lines:
        print(line)
    if args.report:
        harness.write_jsonl(args.report, lines)
    return EXIT_OK


def cmd_lemmas(args) -> int:
    rep = harness.sweep_lemmas(args.n_max, args.lemma, lemma5_n_max=args.lemma5_n_max)
    harness.write_jsonl(args.report, [rep.to_json()])
    for key in sorted(rep.checked):
        print(f"{key}: checked={rep.checked[key]} skipped={rep.skipped[key]} "
              f"violations={rep.count(int(key[5:]))}")
    return EXIT_FOUND if rep.violations else EXIT_OK


def cmd_realize(args) -> int:
    g = parse_graph6(args.g6)
    seq = [int(v) for v in args.seq.split(",") if v.strip()]
    oc = validate_ocycle(g, seq)
    res = realize_traced(g, oc)
    for i, step in enumerate(res.steps, 1):
        print(f"step {i}: {json.dumps(step)}")
    if res.fallback:
        print("exact search used")
    print("cycle: " + ",".join(map(str, res.cycle)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="heavyham", description=__doc__.splitlines()[0])
    ap.add_argument("--cache", metavar="DIR", help="directory for generated graph6 caches")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("enumerate", help="list non-isomorphic graphs")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--filter", choices=["all", "connected", "2conn"], default="all")
    p.add_argument("--out")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("classify", help="write one condition profile per graph")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--in", dest="inp")
    src.add_argument("--gen", type=int)
    p.add_argument("--filter", choices=["all", "connected", "2conn"], default="2conn")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="check a theorem suite exhaustively")
    p.add_argument("--theorem", required=True, help=f"one of {', '.join(harness.SUITES)} or all")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--n-min", type=int, default=3)
    p.add_argument("--in", dest="inp")
    p.add_argument("--report", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("separate", help="search a graph separating o-heavy and f-heavy")
    p.add_argument("--pattern", required=True, choices=PATTERN_NAMES)
    p.add_argument("--direction", required=True, choices=["f-not-o", "o-not-f"])
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--report")
    p.set_defaults(func=cmd_separate)

    p = sub.add_parser("monotone", help="search a graph heavy for one pattern but not another")
    p.add_argument("--smaller", required=True, choices=PATTERN_NAMES)
    p.add_argument("--larger", required=True, choices=PATTERN_NAMES)
    p.add_argument("--kind", choices=["o", "f"], default="f")
    p.add_argument("--n-max", type=int, required=True)
    p.set_defaults(func=cmd_monotone)

    p = sub.add_parser("reverse", help="non-Hamiltonian witnesses for excluded pattern pairs")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--witnesses", help="graph6 file of candidate witnesses")
    p.add_argument("--report")
    p.set_defaults(func=cmd_reverse)

    p = sub.add_parser("lemmas", help="sweep the cycle lemmas over small graphs")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--lemma", type=int, action="append", choices=[2, 3, 5])
    p.add_argument("--lemma5-n-max", type=int, default=7)
    p.add_argument("--report", required=True)
    p.set_defaults(func=cmd_lemmas)

    p = sub.add_parser("realize-ocycle", help="turn an o-cycle into a cycle")
    p.add_argument("--g6", required=True)
    p.add_argument("--seq", required=True, help="comma-separated vertices")
    p.set_defaults(func=cmd_realize)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "lemma", 0) is None:
        args.lemma = [2, 3, 5]
    try:
        return args.func(args)
    except (EnumerationCapError, harness.PreconditionError, IngestError, GraphError,
            KeyError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
