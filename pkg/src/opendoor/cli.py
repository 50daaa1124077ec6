"""Command line front end: ``opendoor <command> [--key value ...]``.

Exit codes: 0 success, 1 usage error, 2 computation failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import reports
from .analytic import EvalConfig, EvaluationError, F_eval, qc_eval, theta_c
from .exact import qc_series, to_rational
from .geometry import c_zero, gamma_curve, trace_boundary
from .toeplitz import EXACT_MAX_N, RootSearchError

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2
DEEP_N = 20


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_float(s: str) -> float:
    x = float(s)
    if not (x > 0 and math.isfinite(x)):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {s}")
    return x


def _positive_rational(s: str) -> Fraction:
    try:
        x = to_rational(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if x <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {s}")
    return x


def _grid_size(s: str) -> int:
    n = int(s)
    if n < 16:
        raise argparse.ArgumentTypeError("grid sizes must be >= 16")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="opendoor", description="Open door function q_c: series, "
                "Toeplitz bounds, starlikeness constants and figures.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_):
        sp = sub.add_parser(name, help=help_, description=help_)
        sp.add_argument("--out", type=Path, default=None, help="output file (default stdout)")
        return sp

    sp = add("coeffs", "exact Taylor coefficients of q_c as polynomials in c (JSON)")
    sp.add_argument("--n-max", type=int, default=7)

    sp = add("eval", "q_c(z) by the integral representation, or F(c) with --F (JSON)")
    sp.add_argument("--c", type=_positive_float, required=True)
    sp.add_argument("--z", type=float, nargs=2, metavar=("RE", "IM"), default=None)
    sp.add_argument("--F", action="store_true", help="evaluate F(c) = q_c(exp(i theta_c))")
    sp.add_argument("--quad-nodes", type=int, default=64)

    sp = add("table1", "certified roots rho_n of the Toeplitz determinants (CSV)")
    sp.add_argument("--n-max", type=int, default=10)
    # the default is narrow enough for correctly rounded 8-decimal output
    sp.add_argument("--tol", type=_positive_rational, default=Fraction(1, 10**12))
    sp.add_argument("--deep", action="store_true", help=f"allow n-max above {DEEP_N}")

    sp = add("find-c0", "first zero c0 of Re F(c) and gamma(S*) = pi c0 / 4 (JSON)")
    sp.add_argument("--tol", type=_positive_float, default=1e-10)

    sp = add("trace", "boundary curve of q_c on the upper half circle (CSV)")
    sp.add_argument("--c", type=_positive_float, required=True)
    sp.add_argument("--m", type=_grid_size, default=512)

    sp = add("bounds", "gamma(SS_alpha) with its lower and upper bounds (CSV)")
    sp.add_argument("--grid", type=_grid_size, default=20, help="alpha = k/grid, k = 1..grid")
    sp.add_argument("--tol", type=_positive_float, default=1e-7)

    sp = add("plot", "SVG figures: boundary, F-graph or gamma-curves")
    sp.add_argument("--kind", choices=["boundary", "F-graph", "gamma-curves"], required=True)
    sp.add_argument("--c", type=_positive_float, default=None,
                    help="boundary: strip parameter (default c0)")
    sp.add_argument("--m", type=_grid_size, default=512)
    sp.add_argument("--grid", type=_grid_size, default=None,
                    help="F-graph: number of c samples (default 64); "
                         "gamma-curves: alpha = k/grid (default 20)")
    sp.add_argument("--c-min", type=_positive_float, default=0.5)
    sp.add_argument("--c-max", type=_positive_float, default=4.0)
    sp.add_argument("--tol", type=_positive_float, default=1e-6)
    return p


def _cmd_coeffs(a) -> str:
    if a.n_max < 0:
        raise UsageError("--n-max must be >= 0")
    return reports.coeffs_json(qc_series(a.n_max))


def _cmd_eval(a) -> str:
    if a.quad_nodes < 8:
        raise UsageError("--quad-nodes must be >= 8")
    cfg = EvalConfig(quad_nodes=a.quad_nodes, max_quad_nodes=max(8192, a.quad_nodes))
    if a.F:
        if a.z is not None:
            raise UsageError("--F and --z are mutually exclusive")
        th = theta_c(a.c)
        z = complex(math.cos(th), math.sin(th))
        q = F_eval(a.c, cfg)
    else:
        if a.z is None:
            raise UsageError("one of --z RE IM or --F is required")
        z = complex(*a.z)
        q = qc_eval(a.c, z, cfg)
    return reports.dumps_json({"c": a.c, "z": [z.real, z.imag], "q": [q.real, q.imag]})


def _cmd_table1(a) -> str:
    if not 1 <= a.n_max <= EXACT_MAX_N:
        raise UsageError(f"--n-max must lie in 1..{EXACT_MAX_N}")
    if a.n_max > DEEP_N and not a.deep:
        raise UsageError(f"--n-max above {DEEP_N} requires --deep")
    return reports.table1_csv(reports.table1_rows(range(1, a.n_max + 1), a.tol))


def _cmd_find_c0(a) -> str:
    c0, lo, hi = c_zero(a.tol)
    return reports.dumps_json({"c0": c0, "gamma_star": math.pi * c0 / 4, "bracket": [lo, hi]})


def _cmd_trace(a) -> str:
    return reports.trace_csv(trace_boundary(a.c, a.m))


def _alpha_grid(n: int) -> list[float]:
    return [k / n for k in range(1, n + 1)]


def _cmd_bounds(a) -> str:
    return reports.bounds_csv(gamma_curve(_alpha_grid(a.grid), a.tol))


def _cmd_plot(a) -> str:
    if a.kind == "boundary":
        c = a.c if a.c is not None else c_zero(1e-10)[0]
        return reports.emit_svg(trace_boundary(c, a.m), "boundary")
    if a.kind == "F-graph":
        if a.c_max <= a.c_min:
            raise UsageError("--c-max must exceed --c-min")
        cs = np.linspace(a.c_min, a.c_max, a.grid or 64)
        return reports.emit_svg([(float(c), F_eval(float(c)).real) for c in cs], "F-graph")
    return reports.emit_svg(gamma_curve(_alpha_grid(a.grid or 20), a.tol), "gamma-curves")


COMMANDS = {
    "coeffs": _cmd_coeffs,
    "eval": _cmd_eval,
    "table1": _cmd_table1,
    "find-c0": _cmd_find_c0,
    "trace": _cmd_trace,
    "bounds": _cmd_bounds,
    "plot": _cmd_plot,
}


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"opendoor {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (EvaluationError, RootSearchError, ValueError, ArithmeticError) as exc:
        print(f"opendoor {args.command}: computation failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    try:
        if args.out is None:
            sys.stdout.write(text)
        else:
            args.out.write_text(text, encoding="utf-8", newline="\n")
    except OSError as exc:
        print(f"opendoor {args.command}: cannot write output: {exc}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
