"""Spectral radii of symmetric sets: main entry point.

Usage examples
--------------
    # Exact return probabilities of the simple random walk on F_2
    python main.py moments --group free:2 --set a,A,b,B --nmax 3

    # All estimators of rho(S) on Z^2, checked against each other
    python main.py radius --group zd:2 --nmax 250 --radius 30

    # Certified sets S_k with small spectral radius
    python main.py extract --group free:2 --k 60 --engine radial

    # Reproduction table over a k range, as CSV
    python main.py reproduce --group free:2 --k-range 20:120:20 --format csv

    # Re-run a previous report's configuration
    python main.py reproduce --config run.json
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Dict, List, Optional, Sequence

from estimators.report import CertificateViolation
from engines import ENGINE_CHOICES
from experiments.commands import parse_int_list, parse_range, run
from experiments.config import RunConfig, load_run_bundle, merge_config
from experiments.serialize import render

# option key -> every flag that sets it
FLAG_ALIASES = {
    "--ks": ("--ks", "--k", "--k-range"),
}

COMMON_DESTS = ("group", "set", "engine", "format", "out", "seed", "precision", "guard", "ball_guard")
IGNORED_DESTS = ("command", "config", "quiet", "k", "k_range")


def _log_progress(stage: str, done: int, total: int) -> None:
    """One stderr line per progress event; stdout carries only the report."""
    print(f"  [{stage}] {done}/{total}", file=sys.stderr)


def _cli_flag_present(flag: str, argv: Sequence[str]) -> bool:
    for name in FLAG_ALIASES.get(flag, (flag,)):
        if any(arg == name or arg.startswith(name + "=") for arg in argv):
            return True
    return False


def _int_list(text: str) -> List[int]:
    try:
        return parse_int_list(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _int_range(text: str) -> List[int]:
    try:
        return parse_range(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _add_common(parser: argparse.ArgumentParser) -> None:
    defaults = RunConfig(command="")
    parser.add_argument("--group", default=defaults.group,
                        help="Presentation: free:R, fpc:M1,M2,... or zd:D (default: free:2)")
    parser.add_argument("--set", default=None,
                        help="Symmetric set, e.g. a,A,b,B (default: standard set)")
    parser.add_argument("--engine", choices=ENGINE_CHOICES, default=defaults.engine,
                        help="auto picks radial for standard sets of free groups")
    parser.add_argument("--format", choices=["json", "csv"], default=defaults.format)
    parser.add_argument("--out", default=None, help="Output file (default: stdout)")
    parser.add_argument("--seed", type=int, default=defaults.seed)
    parser.add_argument("--precision", type=int, default=defaults.precision,
                        help="Interval precision in bits (default: 128)")
    parser.add_argument("--guard", type=int, default=defaults.guard,
                        help="Largest support size of dense group-ring elements")
    parser.add_argument("--ball-guard", type=int, default=defaults.ball_guard,
                        help="Largest Cayley ball for power iteration")
    parser.add_argument("--config", default=None,
                        help="JSON report of an earlier run; its config is reused")
    parser.add_argument("--quiet", action="store_true", help="No progress lines on stderr")


def _add_ks(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--k", type=int, default=None, help="A single k")
    group.add_argument("--ks", type=_int_list, default=None, help="Comma-separated k values")
    group.add_argument("--k-range", type=_int_range, default=None,
                       help="START:STOP[:STEP], both ends inclusive")


def _add_moment_orders(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--moment-order", type=int, default=None,
                        help="Moments of m(S_k) used for its lower estimate (default: 3)")
    parser.add_argument("--sigma-moment-order", type=int, default=None,
                        help="Moments of m(Sigma) when no closed form exists (default: 12)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Spectral radii of symmetric sets in free-like groups"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("moments", help="Exact trace moments tau(m(S)^{2n})")
    p.add_argument("--nmax", type=int, default=None)

    p = sub.add_parser("radius", help="Every estimator of rho(S)")
    p.add_argument("--nmax", type=int, default=None)
    p.add_argument("--radius", type=int, default=None, help="Cayley ball radius (default: 10)")
    p.add_argument("--iters", type=int, default=None)
    p.add_argument("--tol", type=float, default=None)

    p = sub.add_parser("extract", help="Certificates for S_k")
    _add_ks(p)
    _add_moment_orders(p)

    p = sub.add_parser("reproduce", help="Certificates and the epsilon chain over a k range")
    _add_ks(p)
    _add_moment_orders(p)
    p.add_argument("--target", type=float, default=None,
                   help="Also report the smallest k with rho(S_k u Sigma) < TARGET")
    p.add_argument("--kmax", type=int, default=None)

    p = sub.add_parser("epsilon", help="The epsilon chain from the power bound alone")
    _add_ks(p)
    p.add_argument("--sigma-moment-order", type=int, default=None)

    p = sub.add_parser("sharpness", help="Threshold selection on f_n(x) = min(1, 1/(n x))")
    p.add_argument("--ns", type=_int_list, default=None)
    p.add_argument("--grid", type=int, default=None,
                   help="Also run the discrete selection on a grid of this many cells")

    p = sub.add_parser("walk", help="Monte Carlo return frequency")
    p.add_argument("--steps", type=int, default=None)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--workers", type=int, default=None)

    p = sub.add_parser("gamma", help="Upper bounds 2 (|S| rho(S))^(1/2)")
    p.add_argument("--ns", type=_int_list, default=None, help="Free ranks (default: 2..50)")
    _add_ks(p)
    _add_moment_orders(p)

    for subparser in sub.choices.values():
        _add_common(subparser)
    return parser


def _cli_values(args: argparse.Namespace) -> Dict[str, Any]:
    values = {k: v for k, v in vars(args).items() if k not in IGNORED_DESTS}
    ks = None
    if getattr(args, "k", None) is not None:
        ks = [args.k]
    elif getattr(args, "k_range", None) is not None:
        ks = args.k_range
    elif getattr(args, "ks", None) is not None:
        ks = args.ks
    values["ks"] = ks
    return {k: v for k, v in values.items() if v is not None or k in COMMON_DESTS}


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # usage errors are validation errors; --help exits 0
        return 3 if exc.code else 0
    on_progress = None if args.quiet else _log_progress

    try:
        loaded = load_run_bundle(args.config) if args.config else None
        config = merge_config(
            args.command,
            _cli_values(args),
            loaded,
            lambda flag: _cli_flag_present(flag, argv),
        )
        if loaded is not None and not args.quiet:
            print(f"Using configuration from {args.config}", file=sys.stderr)
        report = run(config, on_progress)
        text = render(report, config.format)
        if config.out:
            with open(config.out, "w", encoding="utf-8") as f:
                f.write(text)
            if not args.quiet:
                print(f"Report written to: {config.out}", file=sys.stderr)
        else:
            sys.stdout.write(text)
    except CertificateViolation as exc:
        print(f"Error: certificate violated: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"Error: {exc}", file=sys.stderr)
        return 3

    return 0 if report.ok else 2


if __name__ == "__main__":
    sys.exit(main())
