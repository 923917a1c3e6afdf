"""Command-line entry point: ``charge``, ``sweep`` and ``verify``.

Exit codes: 0 pass, 1 tolerance failure, 2 usage error, 3 domain error,
4 I/O error.
"""
from __future__ import annotations

import argparse
import sys

from .chern import charge_report
from .errors import DomainError
from .su2 import Branch
from .sweep import SweepConfig, records_to_csv, records_to_json, dumps_json, run_sweep
from .verify import HAAR_REFERENCE_SAMPLES, run_checks

EXIT_OK, EXIT_TOL, EXIT_USAGE, EXIT_DOMAIN, EXIT_IO = 0, 1, 2, 3, 4


def _non_negative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def _positive(text: str) -> int:
    value = _non_negative(text)
    if value == 0:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return value


def _point_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--two-n", type=_non_negative, required=True, help="2N, twice the fuzzy-sphere spin")
    p.add_argument("--two-nu", type=_non_negative, required=True, help="2nu, twice the fiber spin")
    p.add_argument("--branch", choices=["plus", "minus"], required=True,
                   help="plus projects onto [N+nu], minus onto [N-nu]")
    p.add_argument("--tol", type=float, default=1e-9)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fuzzybundle", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    charge = sub.add_parser("charge", help="charge report for one (N, nu, branch) point")
    _point_args(charge)
    charge.add_argument("--format", choices=["json", "text"], default="json")

    sweep = sub.add_parser("sweep", help="charges over a grid of N for several fiber spins")
    sweep.add_argument("--two-nu", type=_positive, nargs="+", default=[1, 2, 3, 4])
    sweep.add_argument("--branch", choices=["plus", "minus"], nargs="+", default=["plus", "minus"])
    sweep.add_argument("--two-n-max", type=_positive, default=100)
    sweep.add_argument("--output", required=True)
    sweep.add_argument("--format", choices=["csv", "json"], default="csv")
    sweep.add_argument("--allow-half-integer-n", action="store_true",
                       help="step two_N by 1 instead of 2")
    sweep.add_argument("--tol", type=float, default=1e-9)
    sweep.add_argument("--workers", type=_positive, default=1)

    verify = sub.add_parser("verify", help="run the invariant suite at one point")
    _point_args(verify)
    verify.add_argument("--suite", choices=["core", "full"], default="core")
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--samples", type=_positive, default=HAAR_REFERENCE_SAMPLES)
    return parser


def _report_text(report) -> str:
    lines = [
        f"two_N={report.two_N} two_nu={report.two_nu} branch={report.branch.value}",
        f"f_numeric = {report.f_numeric:.17g}",
        f"f_closed  = {report.f_closed:.17g}",
        f"q  = {report.q:.17g}",
        f"c1 = {report.c1:.17g}",
        f"k_limit = {report.k_limit}",
    ]
    lines += [f"  {k:<20s} {v:.3e}" for k, v in report.residuals.items()]
    return "\n".join(lines) + "\n"


def cmd_charge(args) -> int:
    try:
        report = charge_report(args.two_n, args.two_nu, args.branch)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    if args.format == "json":
        sys.stdout.write(dumps_json(report.to_dict()))
    else:
        sys.stdout.write(_report_text(report))
    failing = {k: v for k, v in report.residuals.items() if not v < args.tol}
    if failing:
        print(f"tolerance {args.tol:g} exceeded: {failing}", file=sys.stderr)
        return EXIT_TOL
    return EXIT_OK


def cmd_sweep(args) -> int:
    try:
        config = SweepConfig(
            two_nu_list=tuple(args.two_nu),
            branches=tuple(Branch.parse(b) for b in args.branch),
            two_N_max=args.two_n_max,
            output_path=args.output,
            format=args.format,
            half_integer_n=args.allow_half_integer_n,
            tol=args.tol,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        out = open(config.output_path, "w", encoding="utf-8", newline="")
    except OSError as exc:
        print(f"error: cannot write {config.output_path}: {exc}", file=sys.stderr)
        return EXIT_IO
    with out:
        records = run_sweep(config, workers=args.workers)
        good = [r for r in records if r.max_residual < config.tol]
        out.write(records_to_csv(good) if config.format == "csv" else records_to_json(good))
    bad = len(records) - len(good)
    if bad:
        print(f"{bad} point(s) exceeded tolerance {config.tol:g} and were not written",
              file=sys.stderr)
        return EXIT_TOL
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        checks = run_checks(args.two_n, args.two_nu, args.branch, suite=args.suite,
                            tol=args.tol, seed=args.seed, samples=args.samples)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    width = max(len(c.name) for c in checks)
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        print(f"{status}  {c.name:<{width}s}  residual={c.residual:.3e}  tol={c.tol:.1e}")
    failed = sum(not c.passed for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_TOL


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    handler = {"charge": cmd_charge, "sweep": cmd_sweep, "verify": cmd_verify}[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
