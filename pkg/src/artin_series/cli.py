"""Command line entry point: ``artin-series``.

Exit codes: 0 all tasks pass, 1 some task fails, 2 the scenario cannot be
parsed, 3 an internal self-check failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .errors import ArtinError, InternalSelfCheck, ParseError
from .examples import non_sft_scan, wb_failure_check
from .report import build_report, render_text, to_json_text
from .scenario import list_builtins, load_scenario_file, run_scenario

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_INTERNAL = 0, 1, 2, 3


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="artin-series",
                                description="Verify power-series ring properties on exact finite instances.")
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a scenario file or a built-in scenario")
    run.add_argument("scenario", help="path to a TOML scenario, or a built-in name such as paper-suite")
    run.add_argument("--out", help="write the JSON report here")
    run.add_argument("--seed", type=int, help="override the scenario seed")
    run.add_argument("--trunc", type=int, help="override every task's truncation degree")

    ex = sub.add_parser("example", help="run one of the built-in counterexample checks")
    exsub = ex.add_subparsers(dest="example", required=True)
    sft = exsub.add_parser("sft", help="witnesses that the maximal ideal is not SFT")
    sft.add_argument("--k-max", type=int, default=6)
    sft.add_argument("--ideal", default="z0", help='comma-separated generators of J, e.g. "z0,z1"')
    wb = exsub.add_parser("wb", help="y annihilates P[[X]] but no unit-constant series")
    wb.add_argument("--trunc", type=int, default=6)
    wb.add_argument("--window", type=int, default=4)
    wb.add_argument("--samples", type=int, default=50)
    wb.add_argument("--seed", type=int, default=0)

    sub.add_parser("list", help="list built-in families and scenarios")
    return p


def _cmd_run(args) -> int:
    sc = load_scenario_file(args.scenario)
    seed = sc.seed if args.seed is None else args.seed
    outcomes = run_scenario(sc, seed=seed, trunc=args.trunc)
    report = build_report(sc.name, seed, outcomes)
    sys.stdout.write(render_text(report))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(to_json_text(report))
    if any(o.internal for o in outcomes):
        return EXIT_INTERNAL
    return EXIT_OK if report["passed"] else EXIT_FAIL


def _cmd_sft(args) -> int:
    rows = non_sft_scan(args.k_max, args.ideal)
    for w in rows:
        mark = "ok" if w.ok else "FAIL"
        print(f"k={w.k} s={w.s} f={w.f}  f^k={w.power}  outside J: {w.outside_J}  stable: {w.stable}  [{mark}]")
    return EXIT_OK if all(w.ok for w in rows) else EXIT_FAIL


def _cmd_wb(args) -> int:
    rep = wb_failure_check(args.window, args.trunc, args.samples, args.seed)
    print(json.dumps(rep.to_json(), indent=2, sort_keys=True))
    return EXIT_OK if rep.ok else EXIT_FAIL


def main(argv: Optional[List[str]] = None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "list":
            singular = {"families": "family", "scenarios": "scenario"}
            for kind, names in list_builtins().items():
                for n in names:
                    print(f"{singular[kind]}\t{n}")
            return EXIT_OK
        if args.example == "sft":
            return _cmd_sft(args)
        return _cmd_wb(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InternalSelfCheck as exc:
        print(f"internal self-check failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except ArtinError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
