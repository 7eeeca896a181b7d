"""Command-line front end: solve, demo, check-theorem, order.

Problems arrive as a single JSON document (file or stdin): either explicit
monic coefficients or roots-with-multiplicities, plus initial
approximations and optional solver-config overrides.  Complex numbers are
two-element arrays [re, im]; bare numbers are accepted as reals.

Exit codes: 0 ok/guaranteed, 1 input error, 2 max-iterations reached,
3 numerical failure (collision/singular denominator/overflow),
4 guarantee not established.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import DegenerateSystemError, InsufficientDataError, MultirootsError
from .iteration import (
    SolveConfig,
    SolveReport,
    SolveStatus,
    UpdateMode,
    solve,
)
from .polynomial import MonicPolynomial
from .rootsystem import RootSystem, poly_from_roots
from .theory import TheoremCheckResult, estimate_order, theorem_check

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_MAX_ITERATIONS = 2
EXIT_NUMERICAL = 3
EXIT_NO_GUARANTEE = 4

_STATUS_EXIT = {
    SolveStatus.CONVERGED: EXIT_OK,
    SolveStatus.MAX_ITERATIONS: EXIT_MAX_ITERATIONS,
    SolveStatus.COLLISION: EXIT_NUMERICAL,
    SolveStatus.SINGULAR_DENOMINATOR: EXIT_NUMERICAL,
    SolveStatus.OVERFLOW: EXIT_NUMERICAL,
}

# Built-in demonstration problem: a degree-6 polynomial with a double, a
# simple and a triple root, solved from deliberately rough guesses.
DEMO_ROOTS = (complex(-2.0), complex(1.0), complex(3.0))
DEMO_MULTIPLICITIES = (2, 1, 3)
DEMO_INITIAL = (complex(-3.0), complex(0.1), complex(4.0))
DEMO_CONFIG = SolveConfig(
    max_iterations=20,
    step_tolerance=1e-15,
    # Keep every component live through the shallow-residual phase near the
    # multiple roots (compensated evaluation still resolves ~1e-23 there);
    # freezing then catches the exact landings.
    residual_tolerance=1e-26,
)


class ProblemSpecError(ValueError):
    """Malformed problem document."""


@dataclass(frozen=True)
class ProblemSpec:
    """A solver problem: polynomial source, multiplicities, start vector."""

    poly: MonicPolynomial
    multiplicities: tuple[int, ...]
    initial: tuple[complex, ...]
    config: SolveConfig
    roots: Optional[tuple[complex, ...]] = None  # known true roots, if given


def _as_complex(obj, what: str) -> complex:
    if isinstance(obj, (int, float)):
        value = complex(float(obj), 0.0)
    elif (isinstance(obj, list) and len(obj) == 2
            and all(isinstance(p, (int, float)) for p in obj)):
        value = complex(float(obj[0]), float(obj[1]))
    else:
        raise ProblemSpecError(
            f"input: {what} must be a number or a two-element [re, im] array, "
            f"got {obj!r}"
        )
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise ProblemSpecError(f"input: {what} must be finite, got {obj!r}")
    return value


def _as_complex_list(obj, what: str) -> tuple[complex, ...]:
    if not isinstance(obj, list) or not obj:
        raise ProblemSpecError(f"input: {what} must be a non-empty array")
    return tuple(_as_complex(v, f"{what}[{i}]") for i, v in enumerate(obj))


def parse_config(data: dict, overrides: Optional[dict] = None) -> SolveConfig:
    """Build a SolveConfig from a JSON config object plus CLI overrides."""
    merged = dict(data or {})
    merged.update({k: v for k, v in (overrides or {}).items() if v is not None})
    known = {
        "max_iterations", "step_tolerance", "residual_tolerance",
        "collision_threshold", "update_mode",
    }
    unknown = set(merged) - known
    if unknown:
        raise ProblemSpecError(f"input: unknown config fields {sorted(unknown)}")
    kwargs = {}
    for key in known - {"update_mode"}:
        if key in merged:
            kwargs[key] = merged[key]
    if "update_mode" in merged:
        mode = merged["update_mode"]
        try:
            kwargs["update_mode"] = UpdateMode(mode)
        except ValueError:
            raise ProblemSpecError(
                f"input: update_mode must be 'total' or 'serial', got {mode!r}"
            ) from None
    try:
        return SolveConfig(**kwargs)
    except (TypeError, ValueError) as exc:
        raise ProblemSpecError(f"input: bad config: {exc}") from None


def parse_problem(text: str, config_overrides: Optional[dict] = None) -> ProblemSpec:
    """Parse a problem JSON document into a validated ProblemSpec."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemSpecError(
            f"input:{exc.lineno}:{exc.colno}: {exc.msg}"
        ) from None
    if not isinstance(data, dict):
        raise ProblemSpecError("input: top-level document must be an object")

    has_coeffs = "coefficients" in data
    has_roots = "roots" in data
    if has_coeffs == has_roots:
        raise ProblemSpecError(
            "input: provide exactly one polynomial source, either "
            "'coefficients' or 'roots'"
        )
    if "multiplicities" not in data:
        raise ProblemSpecError("input: 'multiplicities' is required")
    mults_raw = data["multiplicities"]
    if (not isinstance(mults_raw, list) or not mults_raw
            or not all(isinstance(a, int) and a >= 1 for a in mults_raw)):
        raise ProblemSpecError(
            "input: 'multiplicities' must be an array of positive integers"
        )
    mults = tuple(int(a) for a in mults_raw)

    roots = None
    if has_roots:
        roots = _as_complex_list(data["roots"], "roots")
        if len(roots) != len(mults):
            raise ProblemSpecError(
                f"input: {len(roots)} roots but {len(mults)} multiplicities"
            )
        try:
            poly = poly_from_roots(RootSystem(roots, mults))
        except ValueError as exc:
            raise ProblemSpecError(f"input: bad roots: {exc}") from None
    else:
        coeffs = _as_complex_list(data["coefficients"], "coefficients")
        try:
            poly = MonicPolynomial(coeffs)
        except ValueError as exc:
            raise ProblemSpecError(f"input: bad coefficients: {exc}") from None
        if sum(mults) != poly.degree:
            raise ProblemSpecError(
                f"input: multiplicities sum to {sum(mults)} but the "
                f"polynomial degree is {poly.degree}"
            )

    if "initial" not in data:
        raise ProblemSpecError("input: 'initial' approximations are required")
    initial = _as_complex_list(data["initial"], "initial")
    if len(initial) != len(mults):
        raise ProblemSpecError(
            f"input: {len(initial)} initial approximations but "
            f"{len(mults)} multiplicities"
        )

    cfg_data = data.get("config", {})
    if not isinstance(cfg_data, dict):
        raise ProblemSpecError("input: 'config' must be an object")
    config = parse_config(cfg_data, config_overrides)
    return ProblemSpec(poly=poly, multiplicities=mults, initial=initial,
                       config=config, roots=roots)


# ---------------------------------------------------------------------------
# output formatting

def format_float(x: float) -> str:
    """Fixed 17-significant-digit decimal form (round-trips binary64)."""
    if math.isnan(x) or math.isinf(x):
        return "null"
    return format(x + 0.0, ".17g")  # +0.0 normalizes -0.0


def canonical_json(obj) -> str:
    """Serialize plain data deterministically: insertion-ordered keys and
    17-significant-digit floats, so parse-then-reserialize is byte-stable."""
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(canonical_json(v) for v in obj) + "]"
    if isinstance(obj, dict):
        parts = (f"{json.dumps(str(k))}: {canonical_json(v)}" for k, v in obj.items())
        return "{" + ", ".join(parts) + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _complex_pair(z: complex) -> list[float]:
    return [z.real + 0.0, z.imag + 0.0]


def report_to_data(report: SolveReport) -> dict:
    """SolveReport as plain JSON-ready data with canonical field order."""
    return {
        "status": report.status.value,
        "iterations_used": report.iterations_used,
        "final": [_complex_pair(v) for v in report.final],
        "trace": {
            "iterations": [
                {
                    "k": rec.k,
                    "values": [_complex_pair(v) for v in rec.values],
                    "residuals": list(rec.residuals),
                    "steps": None if rec.steps is None else list(rec.steps),
                    "frozen": list(rec.frozen),
                }
                for rec in report.trace
            ]
        },
    }


def report_to_csv(report: SolveReport) -> str:
    """Trace as CSV: k, then re/im/residual/step per root, header first."""
    m = len(report.final)
    header = ["k"]
    for i in range(m):
        header += [f"x{i}_re", f"x{i}_im", f"x{i}_residual", f"x{i}_step"]
    lines = [",".join(header)]
    for rec in report.trace:
        row = [str(rec.k)]
        for i in range(m):
            row.append(format_float(rec.values[i].real))
            row.append(format_float(rec.values[i].imag))
            row.append(format_float(rec.residuals[i]))
            row.append("" if rec.steps is None else format_float(rec.steps[i]))
        lines.append(",".join(row))
    return "\n".join(lines)


def _table_cell(z: complex) -> str:
    # 18 decimal digits; purely real values print without an imaginary part
    if z.imag == 0.0:
        return f"{z.real:.18f}"
    return f"{z.real:.18f}{z.imag:+.18f}j"


def report_to_table(report: SolveReport) -> str:
    m = len(report.final)
    lines = ["  ".join(["k".rjust(3)] + [f"x{i + 1}".rjust(24) for i in range(m)])]
    for rec in report.trace:
        cells = [str(rec.k).rjust(3)] + [_table_cell(v).rjust(24) for v in rec.values]
        lines.append("  ".join(cells))
    lines.append(f"status: {report.status.value}")
    lines.append(f"iterations_used: {report.iterations_used}")
    finals = ", ".join(
        f"{format_float(v.real)}{'+' if v.imag >= 0 else '-'}{format_float(abs(v.imag))}j"
        for v in report.final
    )
    lines.append(f"final: {finals}")
    return "\n".join(lines)


def emit_report(report: SolveReport, fmt: str, out) -> None:
    if fmt == "json":
        print(canonical_json(report_to_data(report)), file=out)
    elif fmt == "csv":
        print(report_to_csv(report), file=out)
    else:
        print(report_to_table(report), file=out)


def check_result_to_data(result: TheoremCheckResult) -> dict:
    con = result.constants
    return {
        "c": con.c,
        "q": con.q,
        "d": con.d,
        "n": con.n,
        "M": con.M,
        "N": con.N,
        "lhs": result.lhs,
        "per_root_margin": list(result.per_root_margin),
        "guaranteed": result.guaranteed,
        "reason": result.reason,
    }


# ---------------------------------------------------------------------------
# commands

def _read_input(path: Optional[str]) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ProblemSpecError(f"input: cannot read {path}: {exc}") from None


def cmd_solve(args) -> int:
    spec = parse_problem(_read_input(args.input), _cli_config_overrides(args))
    report = solve(spec.poly, spec.multiplicities, spec.initial, spec.config)
    emit_report(report, args.format, sys.stdout)
    return _STATUS_EXIT[report.status]


def cmd_demo(args) -> int:
    poly = poly_from_roots(RootSystem(DEMO_ROOTS, DEMO_MULTIPLICITIES))
    report = solve(poly, DEMO_MULTIPLICITIES, DEMO_INITIAL, DEMO_CONFIG)
    emit_report(report, args.format, sys.stdout)
    return _STATUS_EXIT[report.status]


def cmd_check_theorem(args) -> int:
    try:
        data = json.loads(_read_input(args.input))
    except json.JSONDecodeError as exc:
        raise ProblemSpecError(f"input:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict) or "roots" not in data or "multiplicities" not in data:
        raise ProblemSpecError(
            "input: check-theorem needs an object with 'roots' and "
            "'multiplicities'"
        )
    roots = _as_complex_list(data["roots"], "roots")
    mults = data["multiplicities"]
    if (not isinstance(mults, list)
            or not all(isinstance(a, int) and a >= 1 for a in mults)):
        raise ProblemSpecError(
            "input: 'multiplicities' must be an array of positive integers"
        )
    if len(roots) < 2:
        raise ProblemSpecError("input: check-theorem needs at least two roots")
    try:
        rs = RootSystem(roots, tuple(mults))
        result = theorem_check(rs, args.c, args.q)
    except (ValueError, DegenerateSystemError) as exc:
        raise ProblemSpecError(f"input: {exc}") from None

    data_out = check_result_to_data(result)
    if args.format == "json":
        print(canonical_json(data_out))
    else:
        for key, value in data_out.items():
            if isinstance(value, float):
                value = format_float(value)
            elif isinstance(value, list):
                value = "[" + ", ".join(format_float(v) for v in value) + "]"
            print(f"{key}: {value}")
    return EXIT_OK if result.guaranteed else EXIT_NO_GUARANTEE


def cmd_order(args) -> int:
    spec = parse_problem(_read_input(args.input), _cli_config_overrides(args))
    if spec.roots is None:
        raise ProblemSpecError(
            "input: order estimation needs the true roots; supply the "
            "polynomial as 'roots' with 'multiplicities'"
        )
    report = solve(spec.poly, spec.multiplicities, spec.initial, spec.config)
    if report.status not in (SolveStatus.CONVERGED, SolveStatus.MAX_ITERATIONS):
        emit_report(report, args.format, sys.stdout)
        return _STATUS_EXIT[report.status]
    rs = RootSystem(spec.roots, spec.multiplicities)
    try:
        orders = estimate_order(report.trace, rs)
    except InsufficientDataError:
        orders = [None] * rs.m
    if args.format == "json":
        print(canonical_json({
            "status": report.status.value,
            "iterations_used": report.iterations_used,
            "orders": orders,
        }))
    else:
        for i, order in enumerate(orders):
            shown = "n/a" if order is None else format_float(order)
            print(f"root {i}: order {shown}")
    return EXIT_OK


def _cli_config_overrides(args) -> dict:
    return {
        "max_iterations": args.max_iter,
        "step_tolerance": args.step_tol,
        "residual_tolerance": args.res_tol,
        "update_mode": args.mode,
    }


def _add_common_flags(parser, with_input=True, with_config=True):
    parser.add_argument("--format", choices=("json", "csv", "table"),
                        default="table", help="output format (default: table)")
    if with_input:
        parser.add_argument("--input", default=None,
                            help="problem JSON file (default: stdin)")
    if with_config:
        parser.add_argument("--max-iter", type=int, default=None, dest="max_iter")
        parser.add_argument("--step-tol", type=float, default=None, dest="step_tol")
        parser.add_argument("--res-tol", type=float, default=None, dest="res_tol")
        parser.add_argument("--mode", choices=("total", "serial"), default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multiroots",
        description="Simultaneously find all roots of a monic complex "
                    "polynomial with known multiplicities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve a problem from JSON input")
    _add_common_flags(p_solve)
    p_solve.set_defaults(func=cmd_solve)

    p_demo = sub.add_parser("demo", help="run the built-in sextic demo problem")
    _add_common_flags(p_demo, with_input=False, with_config=False)
    p_demo.set_defaults(func=cmd_demo)

    p_check = sub.add_parser("check-theorem",
                             help="evaluate the convergence guarantee")
    _add_common_flags(p_check, with_config=False)
    p_check.add_argument("--c", type=float, required=True,
                         help="initial-approximation radius constant")
    p_check.add_argument("--q", type=float, required=True,
                         help="contraction base, must be < 1 for a guarantee")
    p_check.set_defaults(func=cmd_check_theorem)

    p_order = sub.add_parser("order",
                             help="solve and estimate per-root convergence order")
    _add_common_flags(p_order)
    p_order.set_defaults(func=cmd_order)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ProblemSpecError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, DegenerateSystemError) as exc:
        print(f"input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except MultirootsError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
