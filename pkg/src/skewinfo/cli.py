"""Command-line entry point: ``skewinfo {bounds,sweep,table1,verify}``."""

from __future__ import annotations

import argparse
import sys

from .errors import SkewInfoError
from .report import emit_csv, evaluate_point, format_report, format_table1, run_sweep, table1_rows
from .scenario import load_scenario
from .verify import verify

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_PROPERTY_FAILURE = 2
EXIT_IO = 3


def _cmd_bounds(args) -> int:
    sc = load_scenario(args.scenario)
    theta = sc.theta if args.theta is None else args.theta
    q = sc.default_q if args.q is None else args.q
    rep = evaluate_point(sc, theta=theta, q=args.q)
    print(format_report(sc, theta, q, rep))
    return EXIT_OK


def _cmd_sweep(args) -> int:
    sc = load_scenario(args.scenario)
    rows = run_sweep(sc)
    emit_csv(rows, args.out)
    print(f"wrote {len(rows)} rows to {args.out}")
    return EXIT_OK


def _cmd_table1(args) -> int:
    sc = load_scenario(args.scenario)
    print(format_table1(table1_rows(sc)))
    return EXIT_OK


def _cmd_verify(args) -> int:
    summary = verify(args.seed, args.trials, corrupt=args.corrupt)
    print(summary.format())
    return EXIT_OK if summary.ok else EXIT_PROPERTY_FAILURE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skewinfo",
        description="Skew-information uncertainty bounds for quantum channels.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="evaluate every bound at one point")
    p.add_argument("scenario", help="scenario JSON file or built-in name")
    p.add_argument("--theta", type=float, help="state angle in radians")
    p.add_argument("--q", type=float, help="parameter for all preset channels")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("sweep", help="run the scenario's sweep and write CSV")
    p.add_argument("scenario", help="scenario JSON file or built-in name")
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("table1", help="q = 0.5 comparison at theta = pi/6, pi/4, pi/2")
    p.add_argument("--scenario", default="table1", help=argparse.SUPPRESS)
    p.set_defaults(func=_cmd_table1)

    p = sub.add_parser("verify", help="seeded randomized property checks")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--corrupt", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SkewInfoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
