"""
Command-line front door.

    burnside-sharp constant a-star --digits 9
    burnside-sharp solve --n 10
    burnside-sharp verify bounds --n-max 1000 --format csv
    burnside-sharp verify monotone --n-max 100
    burnside-sharp verify limits --ladder 10:1000000
    burnside-sharp verify accuracy --n-max 1000
    burnside-sharp verify optimality
    burnside-sharp table approx-comparison --n-from 1 --n-to 20

Tables go to stdout or ``--out``; verdicts and log messages go to stderr.
Exit codes: 0 pass, 1 verification failure, 2 usage or domain error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import contextlib
import logging
import sys
from dataclasses import fields
from typing import Any, Callable, Iterable, Iterator, Optional, Sequence, TextIO

from . import __version__
from ._utils.render import (
    OutputFormat,
    Row,
    make_writer,
    to_decimal_string,
    truncate_decimal,
)
from ._utils.settings import Settings
from .errors import BurnsideSharpError, DomainError
from .iterable import Stream
from .solver import solve_a_n, solve_a_star
from .verify import (
    PROBE_DELTA,
    PROBE_UPPER_N,
    AccuracySummary,
    BoundReport,
    BoundsSummary,
    MonotoneTally,
    accuracy_rows,
    approx_comparison,
    check_ladder,
    geometric_ladder,
    limit_diagnostics,
    monotone_rows,
    probe_lower_optimality,
    probe_upper_optimality,
    verify_bounds,
)

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_IO = 3

MAX_DIGITS = 28

BOUND_COLUMNS = (
    "n",
    "log_lower",
    "log_fact",
    "log_upper",
    "lower_margin",
    "upper_margin",
    "status",
)
MONOTONE_COLUMNS = ("n", "a_n", "step", "gap", "converged")
LIMIT_COLUMNS = (
    "n",
    "a_n",
    "gap",
    "pow_diag",
    "exp_diag",
    "small_diag",
    "ratio_diag",
    "stirling_diag",
)
ACCURACY_COLUMNS = ("n", "stirling_error", "burnside_error", "ratio")
OPTIMALITY_COLUMNS = ("probe", "n", "lower_margin", "upper_margin", "status")
SOLVE_COLUMNS = ("n", "a_n", "residual", "iterations", "bracket_width", "converged")
COMPARISON_COLUMNS = (
    "n",
    "log_fact",
    "log_stirling",
    "log_burnside",
    "log_sharp_lower",
    "log_sharp_upper",
    "stirling_error",
    "burnside_error",
    "sharp_lower_error",
    "sharp_upper_error",
)


def _digits(text: str) -> int:
    value = int(text)
    if not 1 <= value <= MAX_DIGITS:
        raise argparse.ArgumentTypeError(f"digits must lie in [1, {MAX_DIGITS}]")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {value}")
    return value


def _ladder(text: str) -> list[int]:
    start, sep, stop = text.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected A:B, got {text!r}")
    try:
        return geometric_ladder(int(start), int(stop))
    except (ValueError, DomainError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _flag(value: bool) -> str:
    return "true" if value else "false"


def _output_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format",
        type=OutputFormat,
        choices=list(OutputFormat),
        default=OutputFormat.TABLE,
        metavar="{table,csv,json}",
        help="Output format (default: table).",
    )
    parser.add_argument("--out", default=None, help="Write the table to this path.")


def build_parser() -> argparse.ArgumentParser:
    """Builds the argument parser with every subcommand."""
    parser = argparse.ArgumentParser(
        prog="burnside-sharp",
        description="Sharp Burnside bounds for n!: constants, roots and checks.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="-v logs progress, -vv logs every solver iteration.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    constant = commands.add_parser("constant", help="Print a sharp constant.")
    constant.add_argument("name", choices=["a-star"])
    constant.add_argument("--digits", type=_digits, default=9)
    constant.add_argument("--tol", default=None, help="Bracket width of the solve.")

    solve = commands.add_parser("solve", help="Solve f(a_n, n) = n!.")
    solve.add_argument("--n", type=int, required=True)
    solve.add_argument("--tol", default=None, help="Bracket width, e.g. 1e-24.")
    _output_options(solve)

    verify = commands.add_parser("verify", help="Check a claim numerically.")
    kinds = verify.add_subparsers(dest="kind", required=True)
    bounds = kinds.add_parser("bounds", help="f(a_star, n) < n! < f(1/2, n).")
    bounds.add_argument("--n-from", type=_positive, default=1)
    bounds.add_argument("--n-max", "--n-to", dest="n_max", type=_positive, default=1000)
    _output_options(bounds)
    monotone = kinds.add_parser("monotone", help="a_n strictly increasing below 1/2.")
    monotone.add_argument("--n-max", type=_positive, default=100)
    monotone.add_argument("--tol", default=None)
    _output_options(monotone)
    limits = kinds.add_parser("limits", help="Limit diagnostics on a ladder.")
    limits.add_argument(
        "--ladder",
        type=_ladder,
        default=geometric_ladder(10, 1_000_000),
        help="Geometric ladder A:B with x10 steps (default: 10:1000000).",
    )
    _output_options(limits)
    accuracy = kinds.add_parser("accuracy", help="Burnside beats Stirling.")
    accuracy.add_argument("--n-max", type=_positive, default=1000)
    _output_options(accuracy)
    optimality = kinds.add_parser("optimality", help="a_star and 1/2 are best.")
    optimality.add_argument("--n", type=_positive, default=PROBE_UPPER_N)
    optimality.add_argument("--delta", type=float, default=PROBE_DELTA)
    _output_options(optimality)

    table = commands.add_parser("table", help="Print an approximation table.")
    table.add_argument("name", choices=["approx-comparison"])
    table.add_argument("--n-from", type=int, default=1)
    table.add_argument("--n-to", type=int, default=20)
    _output_options(table)
    return parser


@contextlib.contextmanager
def _destination(path: Optional[str]) -> Iterator[TextIO]:
    if path is None:
        yield sys.stdout
        return
    with open(path, "w", encoding="utf-8", newline="") as handle:
        yield handle


def _emit(args: argparse.Namespace, columns: Sequence[str], rows: Iterable[Row]) -> int:
    with _destination(args.out) as out:
        return make_writer(args.format, out, columns).write(rows)


def _cells(record: Any) -> Row:
    return {field.name: getattr(record, field.name) for field in fields(record)}


def _note(message: str) -> None:
    print(message, file=sys.stderr)


def _bound_row(report: BoundReport) -> Row:
    return {
        "n": report.n,
        "log_lower": report.log_lower,
        "log_fact": report.log_fact,
        "log_upper": report.log_upper,
        "lower_margin": report.lower_margin,
        "upper_margin": report.upper_margin,
        "status": report.status.value,
    }


def cmd_constant(args: argparse.Namespace) -> int:
    """Prints a_star truncated to --digits and the residual of its equation."""
    root = solve_a_star(args.tol)
    print(truncate_decimal(root.value, args.digits))
    print(f"residual {to_decimal_string(root.residual, 3)}")
    return EXIT_PASS if root.converged else EXIT_FAIL


def cmd_solve(args: argparse.Namespace) -> int:
    """Prints the RootResult of f(a_n, n) = n!."""
    root = solve_a_n(args.n, args.tol)
    row: Row = {
        "n": args.n,
        "a_n": root.value,
        "residual": root.residual,
        "iterations": root.iterations,
        "bracket_width": root.bracket_width,
        "converged": _flag(root.converged),
    }
    _emit(args, SOLVE_COLUMNS, [row])
    return EXIT_PASS if root.converged else EXIT_FAIL


def _verify_bounds(args: argparse.Namespace) -> int:
    summary = BoundsSummary()
    reports = verify_bounds(args.n_from, args.n_max).on_each(summary.record)
    _emit(args, BOUND_COLUMNS, reports.map(_bound_row))
    _note(
        f"bounds {summary.verdict.value}: {summary.total} rows, "
        f"{summary.strict_pass} strict-pass, "
        f"{summary.defining_equality} defining-equality, "
        f"{summary.indeterminate} indeterminate, {summary.fail} fail"
    )
    if summary.first_failure is not None:
        _note(f"first failure at n={summary.first_failure}")
    return EXIT_PASS if summary.passed else EXIT_FAIL


def _verify_monotone(args: argparse.Namespace) -> int:
    tally = MonotoneTally(None if args.tol is None else float(args.tol))
    rows = monotone_rows(args.n_max, args.tol).on_each(tally.record)
    _emit(
        args,
        MONOTONE_COLUMNS,
        rows.map(
            lambda row: {
                "n": row.n,
                "a_n": row.a_n,
                "step": "" if row.step is None else row.step,
                "gap": row.gap,
                "converged": _flag(row.converged),
            }
        ),
    )
    verdict = tally.verdict()
    _note(
        f"monotone {'pass' if verdict.passed else 'fail'}: n_max={verdict.n_max}, "
        f"a_1={to_decimal_string(verdict.a_1, 15)}, "
        f"a_max={to_decimal_string(verdict.a_max, 15)}, "
        f"steps decreasing for n >= 2: {_flag(verdict.steps_decreasing)}"
    )
    if verdict.first_violation is not None:
        violation = verdict.first_violation
        _note(f"first violation at n={violation.n}: {violation.reason}")
    return EXIT_PASS if verdict.passed else EXIT_FAIL


def _verify_limits(args: argparse.Namespace) -> int:
    rows = limit_diagnostics(args.ladder)
    _emit(args, LIMIT_COLUMNS, [_cells(row) for row in rows])
    verdict = check_ladder(rows)
    _note(f"limits {'pass' if verdict.passed else 'fail'}: {len(rows)} rungs")
    for failure in verdict.failures:
        _note(failure)
    return EXIT_PASS if verdict.passed else EXIT_FAIL


def _verify_accuracy(args: argparse.Namespace) -> int:
    summary = AccuracySummary()
    rows = accuracy_rows(args.n_max).on_each(summary.record)
    _emit(args, ACCURACY_COLUMNS, rows.map(_cells))
    ratio = "-"
    if summary.last_ratio is not None:
        ratio = to_decimal_string(summary.last_ratio, 6)
    _note(
        f"accuracy {'pass' if summary.passed else 'fail'}: {summary.total} rows, "
        f"{summary.violations} violations, last error ratio {ratio}"
    )
    return EXIT_PASS if summary.passed else EXIT_FAIL


def _verify_optimality(args: argparse.Namespace) -> int:
    probes = (
        ("lower", probe_lower_optimality(args.delta)),
        ("upper", probe_upper_optimality(args.n, args.delta)),
    )
    rows: list[Row] = [
        {
            "probe": name,
            "n": report.n,
            "lower_margin": report.lower_margin,
            "upper_margin": report.upper_margin,
            "status": report.status.value,
        }
        for name, report in probes
    ]
    _emit(args, OPTIMALITY_COLUMNS, rows)
    flipped = Stream(rows).all(lambda row: row["status"] == "fail")
    verdict = "pass" if flipped else "fail"
    _note(f"optimality {verdict}: both perturbed bounds must fail")
    return EXIT_PASS if flipped else EXIT_FAIL


VERIFIERS: dict[str, Callable[[argparse.Namespace], int]] = {
    "bounds": _verify_bounds,
    "monotone": _verify_monotone,
    "limits": _verify_limits,
    "accuracy": _verify_accuracy,
    "optimality": _verify_optimality,
}


def cmd_verify(args: argparse.Namespace) -> int:
    """Runs one verification and writes its table."""
    return VERIFIERS[args.kind](args)


def cmd_table(args: argparse.Namespace) -> int:
    """Writes the approximation comparison table."""
    rows = approx_comparison(args.n_from, args.n_to)
    _emit(args, COMPARISON_COLUMNS, rows.map(_cells))
    return EXIT_PASS


COMMANDS: dict[str, Callable[[argparse.Namespace], int]] = {
    "constant": cmd_constant,
    "solve": cmd_solve,
    "verify": cmd_verify,
    "table": cmd_table,
}


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Runs the command line.

    :param argv: Arguments without the program name; sys.argv when omitted.
    :return: The exit code.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    _configure_logging(args.verbose)
    try:
        Settings.from_env()
        return COMMANDS[args.command](args)
    except ValueError as exc:
        logger.error("%s", exc)
        return EXIT_USAGE
    except OSError as exc:
        logger.error("I/O error: %s", exc)
        return EXIT_IO
    except BurnsideSharpError as exc:
        logger.error("%s", exc)
        return EXIT_FAIL
