"""Command-line front end.

JSON goes to stdout, diagnostics to stderr.  Exit codes: 0 success,
1 a verification failure, 2 bad input or usage.
"""
from __future__ import annotations

import argparse
import gc
import json
import sys
import time
from pathlib import Path

from .core import StreamParseError, parse_stream
from .fixtures import FIXTURES
from .index import FullyOnlineIndex
from .query import count_occurrences, find_pattern, report_occurrences
from .reference import DEFAULT_GUARD
from .verify import (VerifyOptions, fuzz_case, random_ops, verify_sequence,
                     with_begin_markers)

REVERSE_LIMIT = 300


def _read_ops(path: str | None):
    if path is None or path == "-":
        return parse_stream(sys.stdin)
    with open(path, encoding="utf-8") as fh:
        return parse_stream(fh)


def _emit(obj):
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _write_dots(index: FullyOnlineIndex, out: Path, prefix: str = ""):
    out.mkdir(parents=True, exist_ok=True)
    for name, text in (("dawg", index.dawg.to_dot()), ("lpt", index.lpt.to_dot()),
                       ("stree", index.stree.to_dot())):
        (out / f"{prefix}{name}.dot").write_text(text, encoding="utf-8")


def cmd_build(args) -> int:
    ops = _read_ops(args.input)
    index = FullyOnlineIndex(oracle=args.oracle)
    every = args.snapshot_every
    out = Path(args.out)
    for i, op in enumerate(ops, start=1):
        index.apply(op)
        if every and i % every == 0:
            _write_dots(index, out, f"step_{i}.")
    if args.finalize:
        index.finalize()
    _emit(index.stats())
    return 0


def cmd_query(args) -> int:
    if not args.pattern:
        print("query: at least one --pattern is required", file=sys.stderr)
        return 2
    index = FullyOnlineIndex(oracle=args.oracle).extend_all(_read_ops(args.input))
    if args.report or args.finalize:
        index.finalize()
    for p in args.pattern:
        row = {"pattern": p, "found": find_pattern(index, p).found,
               "count": count_occurrences(index, p)}
        if args.report:
            row["occurrences"] = [list(x) for x in report_occurrences(index, p)]
        _emit(row)
    return 0


def cmd_export_dot(args) -> int:
    index = FullyOnlineIndex(oracle=args.oracle).extend_all(_read_ops(args.input))
    if args.finalize:
        index.finalize()
    _write_dots(index, Path(args.out))
    _emit({"out": str(args.out), "files": ["dawg.dot", "lpt.dot", "stree.dot"]})
    return 0


def _verify_oracle(kind: str) -> str:
    # the default run cross-checks the full oracle against the parent walk
    return "checked" if kind == "full" else kind


def cmd_verify(args) -> int:
    if args.max_n > DEFAULT_GUARD:
        print(f"verify: --max-n {args.max_n} exceeds the reference guard {DEFAULT_GUARD}",
              file=sys.stderr)
        return 2
    oracle = _verify_oracle(args.oracle)
    cases = []
    if args.input is not None:
        cases.append(("input", _read_ops(args.input), False))
    elif args.fuzz:
        if args.length > args.max_n:
            print("verify: --length exceeds --max-n", file=sys.stderr)
            return 2
        for s in range(args.seed, args.seed + args.fuzz):
            if args.sigma:
                sigma, k = args.sigma, 3
                ops = random_ops(args.length, k, sigma, s)
            else:
                sigma, k, ops = fuzz_case(s, args.length)
            cases.append((f"fuzz-{s}-s{sigma}-k{k}", ops, False))
    else:
        for name, ops in FIXTURES.items():
            cases.append((name, ops, True))
    failed = 0
    for name, ops, reverse in cases:
        if len(ops) > args.max_n:
            print(f"verify: {name} has {len(ops)} updates, above --max-n {args.max_n}",
                  file=sys.stderr)
            return 2
        report = verify_sequence(name, ops, VerifyOptions(oracle=oracle), seed=args.seed)
        row = {"case": name, "steps": report.steps, "ok": report.ok}
        if args.dump_oracle and report.oracle_dump is not None:
            row["oracle"] = report.oracle_dump
        if report.ok and reverse and len(ops) <= REVERSE_LIMIT:
            rev = verify_sequence(name + "+markers", with_begin_markers(ops),
                                  VerifyOptions(reverse=True, oracle=oracle), patterns=0)
            row["reverse_ok"] = rev.ok
            if not rev.ok:
                report = rev
        if not report.ok:
            failed += 1
            row["ok"] = False
            row["failure"] = report.failure
            print(f"verify: {name} failed: {report.failure}", file=sys.stderr)
            print("minimal failing prefix:", file=sys.stderr)
            sys.stderr.write(report.failing_prefix or "")
        _emit(row)
    _emit({"cases": len(cases), "failed": failed, "ok": failed == 0})
    return 1 if failed else 0


def run_bench(n: int, sigma: int, texts: int, seed: int, oracle: str = "full") -> dict:
    """Build a random index of size n with the garbage collector paused."""
    ops = random_ops(n, texts, sigma, seed)
    gc.collect()
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        t0 = time.perf_counter()
        index = FullyOnlineIndex(oracle=oracle).extend_all(ops)
        elapsed = time.perf_counter() - t0
    finally:
        if was_enabled:
            gc.enable()
    return {"n": n, "sigma": sigma, "texts": texts, "seconds": elapsed,
            "created_total": index.created_total(),
            "created_per_n": index.created_total() / max(n, 1),
            "dawg_edges_created": index.dawg.edges_created,
            "deletions": index.dawg.deletions}


def cmd_bench(args) -> int:
    n = args.max_n
    rows = [run_bench(n, args.sigma or 4, args.texts, args.seed, args.oracle)]
    if args.scaling:
        rows.append(run_bench(2 * n, args.sigma or 4, args.texts, args.seed, args.oracle))
        rows[-1]["ratio"] = rows[1]["seconds"] / rows[0]["seconds"]
    for row in rows:
        _emit(row)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", nargs="?", help="update stream file ('-' or omitted: stdin)")
    common.add_argument("--oracle", choices=["full", "walkup"], default="full")
    common.add_argument("--finalize", action="store_true", help="resolve lazy leaves at the end")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="fullyonline",
                                     description="Fully-online DAWG and suffix tree for growing texts.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", parents=[common], help="build and print statistics")
    p.add_argument("--snapshot-every", type=int, default=0, metavar="N",
                   help="write step_<i>.<structure>.dot every N updates")
    p.add_argument("--out", default=".", help="directory for DOT snapshots")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("query", parents=[common], help="look up patterns")
    p.add_argument("--pattern", action="append", default=[])
    p.add_argument("--report", action="store_true", help="also list occurrences (finalizes)")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("export-dot", parents=[common], help="write dawg.dot, lpt.dot, stree.dot")
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("verify", parents=[common],
                       help="check against brute-force references (fixtures, a stream, or fuzz)")
    p.add_argument("--max-n", type=int, default=DEFAULT_GUARD)
    p.add_argument("--fuzz", type=int, default=0, metavar="SEEDS")
    p.add_argument("--length", type=int, default=500, help="updates per fuzz seed")
    p.add_argument("--sigma", type=int, default=0, help="fix the fuzz alphabet size")
    p.add_argument("--dump-oracle", action="store_true",
                   help="attach the heavy/light classification and induced tree to each case")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", parents=[common], help="time a random build")
    p.add_argument("--max-n", type=int, default=100_000)
    p.add_argument("--sigma", type=int, default=4)
    p.add_argument("--texts", type=int, default=3)
    p.add_argument("--scaling", action="store_true", help="also run 2N and report the ratio")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except StreamParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
