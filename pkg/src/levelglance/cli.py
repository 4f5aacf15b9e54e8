"""Command-line interface: ``levelglance <subcommand> [options]``.

Exit codes: 0 success, 2 argument error, 3 numerical non-convergence.
"""
from __future__ import annotations

import argparse
import logging
import math
import sys

import numpy as np

from . import analysis
from .approximations import ddp_zero_points
from .errors import (ContourError, ConvergenceError, DegenerateSearchError,
                     DomainError, IntegratorError, UnsupportedModelError,
                     ValidityError)
from .model import ModelSpec
from .propagator import PropagationConfig, propagate_amplitudes
from .special import gen_fresnel

log = logging.getLogger("levelglance")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3

TABLE_N = (2, 4, 6, 8, 10, 12, 14, 16)


class _UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _method_list(text: str) -> list[str]:
    values = [v.strip() for v in text.split(",") if v.strip()]
    bad = [v for v in values if v not in analysis.METHODS]
    if bad or not values:
        raise argparse.ArgumentTypeError(
            f"methods must be drawn from {','.join(analysis.METHODS)}; got {text!r}")
    return values


def _add_output(p):
    p.add_argument("--out", help="output file (default: standard output)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def _add_numeric(p):
    p.add_argument("--tol", type=float, default=1e-6, help="convergence tolerance on P")
    p.add_argument("--window", type=float, default=None,
                   help="initial half-width T of the integration window")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="levelglance",
        description="Transition probabilities for power-law level-glancing two-state models.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="propagate one model and export its trajectory")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--samples", type=int, default=1001)
    _add_numeric(p)
    _add_output(p)

    p = sub.add_parser("sweep", help="compare methods over a grid of couplings")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=float, help="single coupling instead of a grid")
    p.add_argument("--alpha-min", type=float, default=0.0)
    p.add_argument("--alpha-max", type=float, default=6.0)
    p.add_argument("--steps", type=int, default=600, help="number of grid points")
    p.add_argument("--methods", type=_method_list, default=None,
                   help="comma list of numeric,ddp,ddp1,pert,magnus")
    p.add_argument("--workers", type=int, default=1)
    _add_numeric(p)
    _add_output(p)

    p = sub.add_parser("maxima", help="maximum P and its coupling for each N")
    p.add_argument("--n-list", type=_int_list, default=list(TABLE_N))
    p.add_argument("--alpha-min", type=float, default=0.1)
    p.add_argument("--alpha-max", type=float, default=2.0)
    p.add_argument("--workers", type=int, default=1)
    _add_numeric(p)
    _add_output(p)

    p = sub.add_parser("zeros", help="complex zeros of the quasienergy")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=float, required=True)
    _add_output(p)

    p = sub.add_parser("fresnel", help="generalized Fresnel integrals")
    p.add_argument("--n", type=float, required=True, help="order n > 1")
    p.add_argument("--tau", type=float, default=None, help="upper limit (default: infinity)")
    p.add_argument("--tau-min", type=float, default=None)
    p.add_argument("--tau-max", type=float, default=None)
    p.add_argument("--steps", type=int, default=101)
    _add_output(p)
    return parser


def _config(args, samples: int = 0) -> PropagationConfig:
    return PropagationConfig(window_half_width=args.window, convergence_tol=args.tol,
                             sample_count=samples)


def _emit(args, text: str):
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_simulate(args) -> int:
    if args.samples < 0:
        raise _UsageError("--samples must be >= 0")
    spec = ModelSpec(args.n, args.alpha)
    result = propagate_amplitudes(spec, _config(args, args.samples))
    if args.format == "csv":
        text = analysis.to_csv(analysis.TRAJECTORY_HEADER, analysis.trajectory_rows(result))
    else:
        rows = analysis.trajectory_rows(result)
        text = analysis.to_json({
            "n": spec.n_power,
            "alpha": spec.alpha,
            "final_probability": float(analysis.fmt(result.final_probability)),
            "converged_window": float(analysis.fmt(result.converged_window)),
            "unitarity_drift": float(analysis.fmt(result.unitarity_drift)),
            "step_count": result.step_count,
            "trajectory": [dict(zip(analysis.TRAJECTORY_HEADER, map(float, r))) for r in rows],
        })
    _emit(args, text)
    line = f"P = {analysis.fmt(result.final_probability)}\n"
    (sys.stdout if args.out else sys.stderr).write(line)
    return EXIT_OK


def _cmd_sweep(args) -> int:
    if args.alpha is not None:
        grid = np.array([args.alpha])
    else:
        grid = analysis.default_alpha_grid(args.alpha_min, args.alpha_max, args.steps)
    methods = args.methods
    if methods is None:
        methods = analysis.METHODS if args.n % 2 == 0 else ("numeric", "ddp")
    records = analysis.sweep(args.n, grid, methods, _config(args), workers=args.workers)
    if args.format == "csv":
        text = analysis.to_csv(analysis.SWEEP_HEADER, analysis.sweep_rows(records))
    else:
        text = analysis.to_json(analysis.sweep_payload(records))
    _emit(args, text)
    failed = [r for r in records if r.error]
    for r in failed:
        log.error("alpha=%s: %s", analysis.fmt(r.alpha), r.error)
    return EXIT_NUMERIC if failed else EXIT_OK


def _cmd_maxima(args) -> int:
    records = analysis.maxima_table(args.n_list, _config(args),
                                    (args.alpha_min, args.alpha_max), workers=args.workers)
    if args.format == "csv":
        text = analysis.to_csv(analysis.MAXIMA_HEADER, analysis.maxima_rows(records))
    else:
        text = analysis.to_json(analysis.maxima_payload(records))
    _emit(args, text)
    sys.stderr.write(analysis.table_report(records))
    return EXIT_OK


def _cmd_zeros(args) -> int:
    points = ddp_zero_points(ModelSpec(args.n, args.alpha))
    if args.format == "csv":
        text = analysis.to_csv(analysis.ZEROS_HEADER, analysis.zeros_rows(points))
    else:
        text = analysis.to_json(analysis.zeros_payload(points))
    _emit(args, text)
    return EXIT_OK


def _cmd_fresnel(args) -> int:
    if args.tau_min is not None or args.tau_max is not None:
        if args.tau_min is None or args.tau_max is None or args.steps < 1:
            raise _UsageError("--tau-min, --tau-max and --steps go together")
        taus = list(np.linspace(args.tau_min, args.tau_max, args.steps))
    else:
        taus = [math.inf if args.tau is None else args.tau]
    values = [gen_fresnel(args.n, float(t)) for t in taus]
    if args.format == "csv":
        rows = [[analysis.fmt(v.order), "inf" if math.isinf(v.tau) else analysis.fmt(v.tau),
                 analysis.fmt(v.cosine_part), analysis.fmt(v.sine_part)] for v in values]
        text = analysis.to_csv(analysis.FRESNEL_HEADER, rows)
    else:
        text = analysis.to_json([
            {"n": v.order, "tau": None if math.isinf(v.tau) else float(analysis.fmt(v.tau)),
             "c": float(analysis.fmt(v.cosine_part)), "s": float(analysis.fmt(v.sine_part))}
            for v in values])
    _emit(args, text)
    return EXIT_OK


_COMMANDS = {
    "simulate": _cmd_simulate,
    "sweep": _cmd_sweep,
    "maxima": _cmd_maxima,
    "zeros": _cmd_zeros,
    "fresnel": _cmd_fresnel,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return _COMMANDS[args.command](args)
    except (_UsageError, DomainError, UnsupportedModelError, ValidityError) as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"levelglance {args.command}: error: {exc}\n")
        return EXIT_USAGE
    except (ConvergenceError, IntegratorError, ContourError, DegenerateSearchError) as exc:
        sys.stderr.write(f"levelglance {args.command}: numerical failure: {exc}\n")
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
