"""
Checks every claim about the sharp Burnside bounds that can be tested numerically:

* f(a_star, n) < n! < f(1/2, n), with equality on the left at n = 1,
* a_star and 1/2 cannot be improved (perturbation probes),
* a_n is strictly increasing with a_1 <= a_n < 1/2,
* the limit chain f(a_n)/n! = 1, e**-a_n (1 + a_n/n)**n -> 1,
  (1 + a_n/n)**a_n -> 1 and n**(a_n - 1/2) -> 1 along a geometric ladder,
* Burnside's formula is more accurate than Stirling's.

Sweeps are lazy Streams fed by the running log-factorial sum, so a sweep over a
million n keeps constant memory.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Optional, Sequence

from ._utils.settings import DEFAULTS, Settings
from .approx import (
    STRICTNESS_FACTOR,
    ApproxKind,
    a_star,
    error_budget,
    log_approx,
    log_f,
    signed_rel_error,
)
from .errors import DomainError, SweepRangeError
from .extprec import (
    HALF,
    ExtReal,
    Number,
    as_ext,
    ext_exp,
    ext_expm1,
    ext_log,
    ext_log1p,
)
from .iterable import Stream
from .logfact import log_factorial, log_factorial_sweep
from .solver import solve_a_n, tol_res

logger = logging.getLogger(__name__)

PROBE_DELTA = 1e-6
PROBE_UPPER_N = 1_000_000
LADDER_TAIL_N = 1_000_000
LADDER_TAIL_FLOOR = 0.49


class BoundStatus(Enum):
    """Outcome of a bound check at one n."""

    STRICT_PASS = "strict-pass"
    DEFINING_EQUALITY = "defining-equality"
    INDETERMINATE = "indeterminate"
    FAIL = "fail"


@dataclass(frozen=True)
class BoundReport:
    """
    The sandwich log f(a_lower, n) < log n! < log f(a_upper, n) at one n.

    :param n: The argument.
    :param log_lower: log of the lower bound.
    :param log_fact: log n!.
    :param log_upper: log of the upper bound.
    :param lower_margin: log_fact - log_lower.
    :param upper_margin: log_upper - log_fact.
    :param status: StrictPass when both margins exceed the error budget.
    """

    n: int
    log_lower: ExtReal
    log_fact: ExtReal
    log_upper: ExtReal
    lower_margin: ExtReal
    upper_margin: ExtReal
    status: BoundStatus


def _side_status(margin: ExtReal, threshold: float) -> BoundStatus:
    if margin > threshold:
        return BoundStatus.STRICT_PASS
    if margin < -threshold:
        return BoundStatus.FAIL
    return BoundStatus.INDETERMINATE


def equality_tolerance() -> ExtReal:
    """How close the n = 1 lower margin must be to zero to count as the defining
    equality: ten times the residual tolerance of the a_star solve."""
    return 10 * tol_res(1, as_ext(DEFAULTS.default_tol_a))


def bound_report(
    n: int,
    log_fact: ExtReal,
    a_lower: Number,
    a_upper: Number,
    log_n: Optional[ExtReal] = None,
) -> BoundReport:
    """
    Builds the report for one n.

    :param n: The argument, n >= 1.
    :param log_fact: log n!.
    :param a_lower: Shift of the lower bound.
    :param a_upper: Shift of the upper bound.
    :param log_n: Optional precomputed log n.
    :return: The report.
    """
    log_lower = log_f(a_lower, n, log_n)
    log_upper = log_f(a_upper, n, log_n)
    lower_margin = log_fact - log_lower
    upper_margin = log_upper - log_fact
    threshold = STRICTNESS_FACTOR * error_budget(n)
    lower = _side_status(lower_margin, threshold)
    if n == 1 and abs(lower_margin) <= equality_tolerance():
        lower = BoundStatus.DEFINING_EQUALITY
    upper = _side_status(upper_margin, threshold)
    sides = (lower, upper)
    if BoundStatus.FAIL in sides:
        status = BoundStatus.FAIL
    elif BoundStatus.INDETERMINATE in sides:
        status = BoundStatus.INDETERMINATE
    else:
        status = lower
    return BoundReport(
        n, log_lower, log_fact, log_upper, lower_margin, upper_margin, status
    )


def _check_range(n_from: int, n_to: int, ceiling: int) -> None:
    if n_from < 1 or n_to < n_from:
        raise DomainError(f"domain: need 1 <= n_from <= n_to, got [{n_from}, {n_to}]")
    if n_to > ceiling:
        raise SweepRangeError(f"range too large: n_to={n_to} exceeds {ceiling}")


def verify_bounds(
    n_from: int,
    n_to: int,
    a_lower: Optional[Number] = None,
    a_upper: Optional[Number] = None,
    settings: Optional[Settings] = None,
) -> Stream[BoundReport]:
    """
    Streams one BoundReport per n in [n_from, n_to].

    :param n_from: First n, >= 1.
    :param n_to: Last n, at most the sweep ceiling (10**6 by default).
    :param a_lower: Lower shift; a_star when omitted.
    :param a_upper: Upper shift; 1/2 when omitted.
    :param settings: Ceilings; read from the environment when omitted.
    :return: A lazy Stream of reports.
    :raises SweepRangeError: "range too large" above the ceiling.
    """
    settings = Settings.from_env() if settings is None else settings
    _check_range(n_from, n_to, settings.sweep_ceiling)
    lower = a_star() if a_lower is None else as_ext(a_lower)
    upper = HALF if a_upper is None else as_ext(a_upper)
    return log_factorial_sweep(n_from, n_to).map(
        lambda record: bound_report(record.n, record.value, lower, upper, record.log_n)
    )


@dataclass
class BoundsSummary:
    """Running tally of a bounds sweep."""

    total: int = 0
    strict_pass: int = 0
    defining_equality: int = 0
    indeterminate: int = 0
    fail: int = 0
    first_failure: Optional[int] = None

    def record(self, report: BoundReport) -> None:
        """Counts one report."""
        self.total += 1
        if report.status is BoundStatus.STRICT_PASS:
            self.strict_pass += 1
        elif report.status is BoundStatus.DEFINING_EQUALITY:
            self.defining_equality += 1
        elif report.status is BoundStatus.INDETERMINATE:
            self.indeterminate += 1
        else:
            self.fail += 1
            if self.first_failure is None:
                self.first_failure = report.n
                logger.info("bound fails first at n=%d", report.n)

    @property
    def passed(self) -> bool:
        """No row failed; indeterminate rows are counted but do not fail."""
        return self.fail == 0

    @property
    def verdict(self) -> BoundStatus:
        """The overall status of the sweep."""
        if self.fail:
            return BoundStatus.FAIL
        if self.indeterminate:
            return BoundStatus.INDETERMINATE
        return BoundStatus.STRICT_PASS


def summarize_bounds(reports: Iterable[BoundReport]) -> BoundsSummary:
    """
    Consumes reports and tallies them.

    :param reports: The reports, typically a verify_bounds stream.
    :return: The tally.
    """
    summary = BoundsSummary()
    Stream(reports).for_each(summary.record)
    return summary


def probe_lower_optimality(delta: float = PROBE_DELTA) -> BoundReport:
    """
    Raises the lower shift to a_star + delta; the n = 1 lower bound must then fail,
    which is what makes a_star best possible.

    :param delta: The perturbation.
    :return: The n = 1 report with the perturbed shift.
    """
    return bound_report(1, log_factorial(1), a_star() + delta, HALF)


def probe_upper_optimality(
    n: int = PROBE_UPPER_N, delta: float = PROBE_DELTA
) -> BoundReport:
    """
    Lowers the upper shift to 1/2 - delta; at large n the upper bound must then
    fail, which is what makes 1/2 best possible.

    :param n: Where to probe.
    :param delta: The perturbation.
    :return: The report at n with the perturbed shift.
    """
    if n < 1:
        raise DomainError(f"domain: n must be >= 1, got {n}")
    return bound_report(n, log_factorial(n), a_star(), HALF - delta)


@dataclass(frozen=True)
class SequenceRow:
    """
    One term of the sequence a_n.

    :param n: The index.
    :param a_n: The root of f(a, n) = n!.
    :param step: a_n - a_(n-1); None for the first row.
    :param gap: 1/2 - a_n.
    :param converged: Whether the solve met its tolerances.
    """

    n: int
    a_n: ExtReal
    step: Optional[ExtReal]
    gap: ExtReal
    converged: bool


def monotone_rows(
    n_max: int,
    tol_a: Optional[float] = None,
    settings: Optional[Settings] = None,
) -> Stream[SequenceRow]:
    """
    Streams a_1, ..., a_n_max, solving each from the running log-factorial sum.

    :param n_max: Last index, at most the monotone ceiling (10**4 by default).
    :param tol_a: Solver tolerance; the default when omitted.
    :param settings: Ceilings; read from the environment when omitted.
    :return: A lazy Stream of rows.
    """
    settings = Settings.from_env() if settings is None else settings
    _check_range(1, n_max, settings.monotone_ceiling)

    def generator() -> Iterator[SequenceRow]:
        previous: Optional[ExtReal] = None
        for record in log_factorial_sweep(1, n_max):
            root = solve_a_n(record.n, tol_a, record.value, record.log_n)
            step = None if previous is None else root.value - previous
            gap = HALF - root.value
            yield SequenceRow(record.n, root.value, step, gap, root.converged)
            previous = root.value

    return Stream(generator())


@dataclass(frozen=True)
class MonotoneViolation:
    """The first row breaking a_1 <= a_n < a_(n+1) < 1/2."""

    n: int
    a_n: ExtReal
    reason: str


@dataclass(frozen=True)
class MonotoneVerdict:
    """
    Result of a monotonicity check.

    :param passed: Whether every checked property held.
    :param n_max: Last index checked.
    :param a_1: The first term, equal to a_star.
    :param a_max: The last (largest) term.
    :param min_step: Smallest a_(n+1) - a_n seen.
    :param first_violation: The first failure, if any.
    :param steps_decreasing: Whether the steps shrink for n >= 2; an observation
    that is reported, not required.
    """

    passed: bool
    n_max: int
    a_1: ExtReal
    a_max: ExtReal
    min_step: Optional[ExtReal]
    first_violation: Optional[MonotoneViolation]
    steps_decreasing: bool


class MonotoneTally:
    """Checks sequence rows as they stream past."""

    def __init__(self, tol_a: Optional[float] = None):
        tol = DEFAULTS.default_tol_a if tol_a is None else tol_a
        self._min_gap = as_ext(10 * max(tol, DEFAULTS.tol_floor))
        self._rows = 0
        self._a_1: Optional[ExtReal] = None
        self._last: Optional[SequenceRow] = None
        self._min_step: Optional[ExtReal] = None
        self._violation: Optional[MonotoneViolation] = None
        self._steps_decreasing = True

    def _fail(self, row: SequenceRow, reason: str) -> None:
        if self._violation is None:
            self._violation = MonotoneViolation(row.n, row.a_n, reason)
            logger.info("monotonicity fails at n=%d: %s", row.n, reason)

    def record(self, row: SequenceRow) -> None:
        """Checks one row against the rows seen before it."""
        self._rows += 1
        if self._a_1 is None:
            self._a_1 = row.a_n
            if abs(row.a_n - a_star()) > self._min_gap:
                self._fail(row, "a_1 differs from a_star")
        if not row.converged:
            self._fail(row, "solver did not converge")
        if row.gap.sign() <= 0:
            self._fail(row, "a_n is not below 1/2")
        if row.a_n < self._a_1:
            self._fail(row, "a_n is below a_1")
        last = self._last
        if row.step is not None:
            if row.step <= self._min_gap:
                self._fail(row, "a_n does not exceed a_(n-1)")
            if self._min_step is None or row.step < self._min_step:
                self._min_step = row.step
            if last is not None and last.step is not None and row.step >= last.step:
                self._steps_decreasing = False
        self._last = row

    def verdict(self) -> MonotoneVerdict:
        """
        Summarizes the rows recorded so far.

        :return: The verdict.
        :raises ValueError: If no row was recorded.
        """
        if self._a_1 is None or self._last is None:
            raise ValueError("verdict() called before any row was recorded")
        return MonotoneVerdict(
            passed=self._violation is None,
            n_max=self._last.n,
            a_1=self._a_1,
            a_max=self._last.a_n,
            min_step=self._min_step,
            first_violation=self._violation,
            steps_decreasing=self._steps_decreasing,
        )


def verify_monotone(
    n_max: int,
    tol_a: Optional[float] = None,
    settings: Optional[Settings] = None,
) -> MonotoneVerdict:
    """
    Checks that a_(n+1) - a_n exceeds ten times the solver tolerance and that
    a_1 <= a_n < 1/2 for n <= n_max.

    :param n_max: Last index, at most 10**4 by default.
    :param tol_a: Solver tolerance.
    :param settings: Ceilings; read from the environment when omitted.
    :return: The verdict with the first violation, if any.
    """
    tally = MonotoneTally(tol_a)
    monotone_rows(n_max, tol_a, settings).for_each(tally.record)
    return tally.verdict()


@dataclass(frozen=True)
class LimitRow:
    """
    The factors of the limit chain at one n.

    :param n: The argument.
    :param a_n: The root of f(a, n) = n!.
    :param gap: 1/2 - a_n.
    :param pow_diag: n**(a_n - 1/2).
    :param exp_diag: e**-a_n (1 + a_n/n)**n.
    :param small_diag: (1 + a_n/n)**a_n.
    :param ratio_diag: f(a_n, n)/n!, one up to the solver residual.
    :param stirling_diag: (n + a_n)**a_n e**-a_n (1 + a_n/n)**n / sqrt(n), the
    quotient after Stirling's formula is substituted for n!.
    """

    n: int
    a_n: ExtReal
    gap: ExtReal
    pow_diag: ExtReal
    exp_diag: ExtReal
    small_diag: ExtReal
    ratio_diag: ExtReal
    stirling_diag: ExtReal


def limit_row(n: int, tol_a: Optional[float] = None) -> LimitRow:
    """
    Solves a_n and evaluates the limit factors in double-word arithmetic.

    :param n: The argument, n >= 1.
    :param tol_a: Solver tolerance.
    :return: The row.
    """
    if n < 1:
        raise DomainError(f"domain: n must be >= 1, got {n}")
    log_n = ext_log(n)
    root = solve_a_n(n, tol_a, log_factorial(n), log_n)
    a = root.value
    log1p_term = ext_log1p(a / n)
    compound = n * log1p_term - a
    return LimitRow(
        n=n,
        a_n=a,
        gap=HALF - a,
        pow_diag=ext_exp((a - HALF) * log_n),
        exp_diag=ext_exp(compound),
        small_diag=ext_exp(a * log1p_term),
        ratio_diag=ext_exp(root.residual),
        stirling_diag=ext_exp(a * (log_n + log1p_term) + compound - HALF * log_n),
    )


def limit_diagnostics(
    ns: Sequence[int], tol_a: Optional[float] = None
) -> list[LimitRow]:
    """
    Evaluates the limit chain for each n.

    :param ns: The arguments, each >= 1.
    :param tol_a: Solver tolerance.
    :return: One row per n, in the given order.
    """
    return Stream(ns).map(lambda n: limit_row(n, tol_a)).to_list()


def geometric_ladder(start: int, stop: int) -> list[int]:
    """
    Returns start, 10 start, 100 start, ... up to stop.

    :param start: First rung, >= 1.
    :param stop: Largest allowed rung, >= start.
    :return: The rungs.
    """
    if start < 1 or stop < start:
        raise DomainError(f"domain: need 1 <= start <= stop, got {start}:{stop}")
    rungs = []
    rung = start
    while rung <= stop:
        rungs.append(rung)
        rung *= 10
    return rungs


@dataclass(frozen=True)
class LadderVerdict:
    """Whether the limit diagnostics approach their limits along a ladder."""

    passed: bool
    failures: tuple[str, ...]


def _distance_to_one(value: ExtReal) -> ExtReal:
    return abs(value - 1)


def check_ladder(rows: Sequence[LimitRow]) -> LadderVerdict:
    """
    Checks that along the ladder 1/2 - a_n, |1 - n**(a_n - 1/2)|,
    |1 - e**-a_n (1 + a_n/n)**n| and |1 - (1 + a_n/n)**a_n| strictly decrease,
    that n**(a_n - 1/2) and e**-a_n (1 + a_n/n)**n stay in (0, 1] while
    (1 + a_n/n)**a_n stays above 1, and that a_n > 0.49 from n = 10**6 on.

    :param rows: Rows ordered by increasing n.
    :return: The verdict with a description of every failure.
    """
    failures: list[str] = []
    for row in rows:
        if row.gap.sign() <= 0:
            failures.append(f"n={row.n}: a_n is not below 1/2")
        if not 0 < row.pow_diag <= 1:
            failures.append(f"n={row.n}: n**(a_n - 1/2) outside (0, 1]")
        if not 0 < row.exp_diag <= 1:
            failures.append(f"n={row.n}: e**-a_n (1 + a_n/n)**n outside (0, 1]")
        if not row.small_diag > 1:
            failures.append(f"n={row.n}: (1 + a_n/n)**a_n not above 1")
        if row.n >= LADDER_TAIL_N and not row.a_n > LADDER_TAIL_FLOOR:
            failures.append(f"n={row.n}: a_n not above {LADDER_TAIL_FLOOR}")
    columns = (
        ("1/2 - a_n", lambda row: row.gap),
        ("|1 - n**(a_n - 1/2)|", lambda row: _distance_to_one(row.pow_diag)),
        ("|1 - e**-a_n (1 + a_n/n)**n|", lambda row: _distance_to_one(row.exp_diag)),
        ("|1 - (1 + a_n/n)**a_n|", lambda row: _distance_to_one(row.small_diag)),
    )
    for previous, current in Stream(rows).zip_with_next():
        for name, column in columns:
            if not column(current) < column(previous):
                failures.append(
                    f"{name} does not decrease from n={previous.n} to n={current.n}"
                )
    return LadderVerdict(not failures, tuple(failures))


@dataclass(frozen=True)
class AccuracyRow:
    """
    Signed relative errors of Stirling's and Burnside's formulas at one n.

    :param n: The argument.
    :param stirling_error: Stirling(n)/n! - 1, negative.
    :param burnside_error: Burnside(n)/n! - 1, positive.
    :param ratio: |burnside_error| / |stirling_error|, tending to 1/2.
    """

    n: int
    stirling_error: ExtReal
    burnside_error: ExtReal
    ratio: ExtReal

    @property
    def burnside_better(self) -> bool:
        """Whether Burnside's formula is strictly closer to n!."""
        return abs(self.burnside_error) < abs(self.stirling_error)


def accuracy_rows(
    n_max: int, settings: Optional[Settings] = None
) -> Stream[AccuracyRow]:
    """
    Streams the relative errors of both formulas for n = 1..n_max.

    :param n_max: Last n, at most the sweep ceiling.
    :param settings: Ceilings; read from the environment when omitted.
    :return: A lazy Stream of rows.
    """
    settings = Settings.from_env() if settings is None else settings
    _check_range(1, n_max, settings.sweep_ceiling)
    stirling, burnside = ApproxKind.stirling(), ApproxKind.burnside()

    def row(n: int, log_fact: ExtReal, log_n: Optional[ExtReal]) -> AccuracyRow:
        stirling_error = signed_rel_error(stirling, n, log_fact, log_n)
        burnside_error = signed_rel_error(burnside, n, log_fact, log_n)
        return AccuracyRow(
            n, stirling_error, burnside_error, abs(burnside_error) / abs(stirling_error)
        )

    return log_factorial_sweep(1, n_max).map(
        lambda record: row(record.n, record.value, record.log_n)
    )


@dataclass
class AccuracySummary:
    """Running tally of an accuracy comparison."""

    total: int = 0
    violations: int = 0
    first_violation: Optional[int] = None
    last_ratio: Optional[ExtReal] = None

    def record(self, row: AccuracyRow) -> None:
        """Counts one row."""
        self.total += 1
        self.last_ratio = row.ratio
        if not row.burnside_better:
            self.violations += 1
            if self.first_violation is None:
                self.first_violation = row.n

    @property
    def passed(self) -> bool:
        """Burnside's formula was the more accurate one at every n."""
        return self.violations == 0


def accuracy_comparison(
    n_max: int, settings: Optional[Settings] = None
) -> AccuracySummary:
    """
    Checks |Burnside(n)/n! - 1| < |Stirling(n)/n! - 1| for n = 1..n_max.

    :param n_max: Last n.
    :param settings: Ceilings; read from the environment when omitted.
    :return: The tally; ``last_ratio`` shows the error ratio approaching 1/2.
    """
    summary = AccuracySummary()
    accuracy_rows(n_max, settings).for_each(summary.record)
    return summary


@dataclass(frozen=True)
class ComparisonRow:
    """log n! next to every approximation of it, with their signed relative errors."""

    n: int
    log_fact: ExtReal
    log_stirling: ExtReal
    log_burnside: ExtReal
    log_sharp_lower: ExtReal
    log_sharp_upper: ExtReal
    stirling_error: ExtReal
    burnside_error: ExtReal
    sharp_lower_error: ExtReal
    sharp_upper_error: ExtReal


def approx_comparison(
    n_from: int, n_to: int, settings: Optional[Settings] = None
) -> Stream[ComparisonRow]:
    """
    Streams the approximation table for n_from <= n <= n_to.

    :param n_from: First n, >= 1.
    :param n_to: Last n, at most the sweep ceiling.
    :param settings: Ceilings; read from the environment when omitted.
    :return: A lazy Stream of rows.
    """
    settings = Settings.from_env() if settings is None else settings
    _check_range(n_from, n_to, settings.sweep_ceiling)
    kinds = (
        ApproxKind.stirling(),
        ApproxKind.burnside(),
        ApproxKind.sharp_lower(),
        ApproxKind.sharp_upper(),
    )

    def row(n: int, log_fact: ExtReal, log_n: Optional[ExtReal]) -> ComparisonRow:
        logs = [log_approx(kind, n, log_n) for kind in kinds]
        errors = [ext_expm1(value - log_fact) for value in logs]
        return ComparisonRow(n, log_fact, *logs, *errors)

    return log_factorial_sweep(n_from, n_to).map(
        lambda record: row(record.n, record.value, record.log_n)
    )
