"""Command-line front end.

Exit codes: 0 success, 1 infeasible parameters, 2 validation failure,
64 usage or I/O error.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from . import output
from .conditions import numeric_validate, theorem2_check
from .design import compare, optimize
from .errors import EmptyFeasibleGrid, NegativeDiscriminant, PositiveD
from .iteration import equivalent_filter, iterate
from .realization import realize_balanced, realize_multiplier_free_cross
from .spectral import DesignParams, spectral_point

EXIT_OK, EXIT_INFEASIBLE, EXIT_VALIDATION, EXIT_USAGE = 0, 1, 2, 64
FIGURE_ITERATIONS = [1, 50, 100, 150]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(text: str, path: str):
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from exc


def _params(args) -> DesignParams:
    try:
        return DesignParams(args.b, args.c, args.d, args.t)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _infeasible(p: DesignParams, force: bool) -> bool:
    report = theorem2_check(p)
    if report.feasible:
        return False
    names = ", ".join(v.constraint for v in report.violations)
    if force:
        print(f"warning: infeasible parameters ({names}); continuing because of --force", file=sys.stderr)
        return False
    print(f"infeasible parameters: {names} (use --force to override)", file=sys.stderr)
    return True


def cmd_response(args) -> int:
    p = _params(args)
    if _infeasible(p, args.force):
        return EXIT_INFEASIBLE
    ls = args.l or FIGURE_ITERATIONS
    thetas = np.linspace(0.0, np.pi, args.grid)
    try:
        sp = spectral_point(p, thetas)
    except NegativeDiscriminant as exc:
        print(f"cannot evaluate response: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    cols = {"theta": thetas}
    for l in ls:
        cols[f"F_l{l}"] = sp.response(l)
    cols["mu2"] = sp.mu2
    for l in ls:
        cols[f"lambda1_l{l}"] = sp.lambda1**l
    for l in ls:
        cols[f"lambda2_l{l}"] = sp.lambda2**l

    if args.format == "csv":
        text = output.csv_text(cols)
    elif args.format == "json":
        text = output.json_text({"params": p.as_dict(), "columns": cols})
    else:
        title = f"F^l for b={p.b:g}, c={p.c:g}, d={p.d:g}, t={p.t:g}"
        text = output.svg_text(thetas, {k: v for k, v in cols.items() if k.startswith("F_")}, title)
    _emit(text, args.out)
    return EXIT_OK


def cmd_iterate(args) -> int:
    p = _params(args)
    if args.input is None:
        raise UsageError("iterate needs --input")
    try:
        with open(args.input, encoding="utf-8") as fh:
            x = output.read_signal_csv(fh.read())
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read signal from {args.input}: {exc}") from exc
    realize = realize_balanced if args.realization == "balanced" else realize_multiplier_free_cross
    try:
        m = realize(p)
    except PositiveD as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INFEASIBLE
    l = (args.l or [1])[0]
    _emit(output.signal_csv_text(iterate(x, m, p.t, l)), args.out)
    if args.emit_equivalent:
        kernel = equivalent_filter(m, p.t, l, x.size).coefficients
        _emit(output.signal_csv_text(kernel), args.emit_equivalent)
    return EXIT_OK


def cmd_validate(args) -> int:
    p = _params(args)
    feasibility = theorem2_check(p)
    l_max = max(args.l) if args.l else 150
    try:
        validation = numeric_validate(p, grid_size=args.grid, l_max=l_max, tol=args.tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(output.json_text({"feasibility": feasibility.to_dict(), "validation": validation.to_dict()}), args.out)
    if not feasibility.feasible:
        return EXIT_INFEASIBLE
    return EXIT_OK if validation.passed else EXIT_VALIDATION


def cmd_design(args) -> int:
    l = (args.l or [100])[0]
    try:
        result = optimize(
            l,
            args.theta_lo,
            args.theta_hi,
            args.t,
            grid_density=args.grid_density,
            refinement_iters=args.refinement_iters,
            seed=args.seed,
            fix_d=args.fix_d,
        )
    except EmptyFeasibleGrid as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INFEASIBLE
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(output.json_text(result.to_dict(include_trace=args.trace)), args.out)
    return EXIT_OK


def _parse_config(text: str, t: float):
    try:
        b, c, d, l = text.split(",")
        return DesignParams(float(b), float(c), float(d), t), int(l)
    except ValueError as exc:
        raise UsageError(f"--config expects b,c,d,l; got {text!r}") from exc


def cmd_compare(args) -> int:
    if args.config:
        configs = [_parse_config(s, args.t) for s in args.config]
    else:
        configs = [(DesignParams(1.0, 0.0, 0.0, args.t), 5), (DesignParams(1.0, 0.0, -0.5, args.t), 35)]
    if len(configs) < 2:
        raise UsageError("compare needs at least two --config values")
    try:
        table = compare(configs, args.grid)
    except NegativeDiscriminant as exc:
        print(f"cannot evaluate response: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    labels = [f"F_b{p.b:g}_c{p.c:g}_d{p.d:g}_l{l}" for p, l in configs]
    if args.format == "json":
        text = output.json_text(table.to_dict())
    elif args.format == "svg":
        text = output.svg_text(table.thetas, dict(zip(labels, table.responses)), "response comparison")
    else:
        text = output.csv_text({"theta": table.thetas, **dict(zip(labels, table.responses))})
    _emit(text, args.out)
    for (i, j), locs in table.crossings.items():
        print(f"configs {i} and {j}: {len(locs)} crossing(s) at {[round(v, 6) for v in locs]}", file=sys.stderr)
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .acceptance import run_all

    results = run_all(print)
    return EXIT_OK if all(r.passed for r in results) else EXIT_VALIDATION


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--b", type=float, default=1.0)
    common.add_argument("--c", type=float, default=0.0)
    common.add_argument("--d", type=float, default=-0.5)
    common.add_argument("--t", type=float, default=0.25)
    common.add_argument("--l", type=int, action="append", help="iteration count (repeatable)")
    common.add_argument("--grid", type=int, default=256, help="number of theta samples on [0, pi]")
    common.add_argument("--format", choices=("csv", "json", "svg"), default="csv")
    common.add_argument("--out", default="-", help="output path, '-' for stdout")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--force", action="store_true", help="proceed with infeasible parameters")

    parser = _Parser(prog="scalespace2x2", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("response", parents=[common], help="sampled F^l, mu2 and lambda^l")

    it = sub.add_parser("iterate", parents=[common], help="filter a single-column CSV signal")
    it.add_argument("--input")
    it.add_argument("--emit-equivalent", metavar="PATH", help="also write the equivalent filter kernel")
    it.add_argument("--realization", choices=("balanced", "multiplier-free"), default="balanced")

    va = sub.add_parser("validate", parents=[common], help="feasibility region and numeric checks")
    va.add_argument("--tol", type=float, default=1e-8)

    de = sub.add_parser("design", parents=[common], help="maximize the fall-off")
    de.add_argument("--theta-lo", type=float, default=np.pi / 16)
    de.add_argument("--theta-hi", type=float, default=np.pi / 4)
    de.add_argument("--grid-density", type=int, default=21)
    de.add_argument("--refinement-iters", type=int, default=400)
    de.add_argument("--fix-d", type=float)
    de.add_argument("--trace", action="store_true", help="include every evaluation in the JSON")

    co = sub.add_parser("compare", parents=[common], help="responses of several configurations")
    co.add_argument("--config", action="append", metavar="b,c,d,l")

    sub.add_parser("selftest", parents=[common], help="run the acceptance criteria")
    return parser


COMMANDS = {
    "response": cmd_response,
    "iterate": cmd_iterate,
    "validate": cmd_validate,
    "design": cmd_design,
    "compare": cmd_compare,
    "selftest": cmd_selftest,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.grid < 2:
        print("--grid must be at least 2", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
