"""
Roots of the defining equations of the sharp Burnside constants.

For every n >= 1 the shift a_n in (0, 1/2) solves f(a_n, n) = n!, i.e. the root of

    g(a; n) = log f(a, n) - log n!,     dg/da = log(n + a) > 0,

and a_star = a_1 is also the root of the scalar equation

    h(a) = (a + 1) - (a + 1) log(a + 1) - log(2 pi)/2,   dh/da = -log(a + 1).

Both are found by Newton's method kept inside a sign-change bracket: a step that
leaves the bracket is replaced by the midpoint, and convergence is declared on
the bracket width.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional, Union

from ._utils.settings import DEFAULTS
from .approx import error_budget, log_f_and_slope
from .errors import BracketError, ConvergenceError, DomainError
from .extprec import HALF, HALF_LOG_2PI, ONE, ZERO, ExtReal, as_ext, ext_log
from .logfact import log_factorial

logger = logging.getLogger(__name__)

Tolerance = Union[ExtReal, float, str]
# value and derivative at a point
Evaluation = tuple[ExtReal, ExtReal]

NEWTON = "newton"
BISECT = "bisect"
STRADDLE = "straddle"
ENCLOSE = "enclose"


@dataclass(frozen=True)
class RootResult:
    """
    A solved root.

    :param value: The root, always inside [0, 1/2].
    :param residual: The function value at the root.
    :param iterations: Number of Newton or bisection steps.
    :param bracket_width: Width of the final enclosing interval.
    :param converged: Whether the width and residual tolerances were met.
    :param trace: The kind of every step taken: "newton", "bisect", "straddle",
    or "enclose" when a zero residual was widened into a signed bracket.
    """

    value: ExtReal
    residual: ExtReal
    iterations: int
    bracket_width: ExtReal
    converged: bool
    trace: tuple[str, ...] = ()


def _tolerance(tol_a: Optional[Tolerance]) -> ExtReal:
    if tol_a is None:
        return as_ext(DEFAULTS.default_tol_a)
    tol = ExtReal.from_decimal(tol_a) if isinstance(tol_a, str) else as_ext(tol_a)
    if tol.sign() <= 0:
        raise DomainError(f"domain: the tolerance must be positive, got {tol}")
    if tol < DEFAULTS.tol_floor:
        logger.warning(
            "tolerance %s is below the resolution floor, clamped to %g",
            tol,
            DEFAULTS.tol_floor,
        )
        return as_ext(DEFAULTS.tol_floor)
    return tol


def tol_res(n: int, tol_a: ExtReal) -> ExtReal:
    """
    Residual tolerance matching a bracket width tol_a: |g'| <= log(n + 1) on
    [0, 1/2], plus the evaluation floor of g at n.

    :param n: The argument.
    :param tol_a: The bracket width.
    :return: The largest residual a converged root may have.
    """
    return tol_a * math.log(n + 1) + error_budget(n)


def _enclose_zero(
    evaluate: Callable[[ExtReal], Evaluation],
    x: ExtReal,
    tol_a: ExtReal,
    bracket: tuple[ExtReal, ExtReal],
    lo_sign: int,
) -> tuple[ExtReal, ExtReal]:
    """
    A zero residual is below the evaluation floor and does not locate the root.
    Steps out from x by tol_a/4, doubling, until a point on each side carries
    that side's sign; the bracket ends stop the search.

    :return: The narrowed bracket; both ends have evaluated signs.
    """
    lo, hi = bracket
    new_lo, new_hi = lo, hi
    offset = tol_a / 4
    left_open = right_open = True
    while left_open or right_open:
        if left_open:
            left = x - offset
            if left <= lo:
                left_open = False
            elif evaluate(left)[0].sign() == lo_sign:
                new_lo, left_open = left, False
        if right_open:
            right = x + offset
            if right >= hi:
                right_open = False
            elif evaluate(right)[0].sign() == -lo_sign:
                new_hi, right_open = right, False
        offset = offset * 2
    return new_lo, new_hi


def _safeguarded_newton(
    evaluate: Callable[[ExtReal], Evaluation],
    seed: ExtReal,
    tol_a: ExtReal,
    increasing: bool,
    label: str,
) -> tuple[ExtReal, ExtReal, int, ExtReal, tuple[str, ...]]:
    lo, hi = ZERO, HALF
    lo_value, _ = evaluate(lo)
    hi_value, _ = evaluate(hi)
    lo_sign = -1 if increasing else 1
    if lo_value.sign() != lo_sign or hi_value.sign() != -lo_sign:
        raise BracketError(f"{label}: [0, 1/2] does not bracket a root", lo, hi)

    best, best_value = lo, lo_value
    if abs(hi_value) < abs(lo_value):
        best, best_value = hi, hi_value
    x = seed
    trace: list[str] = []
    iterations = 0
    while iterations < DEFAULTS.max_iterations:
        iterations += 1
        value, slope = evaluate(x)
        if abs(value) < abs(best_value):
            best, best_value = x, value
        if value.is_zero():
            lo, hi = _enclose_zero(evaluate, x, tol_a, (lo, hi), lo_sign)
            trace.append(ENCLOSE)
            break
        if value.sign() == lo_sign:
            lo = x
        else:
            hi = x
        width = hi - lo
        logger.debug("%s: iteration %d, bracket width %s", label, iterations, width)
        if width <= tol_a:
            break
        step = value / slope
        candidate = x - step
        if not lo < candidate < hi:
            candidate = lo + (hi - lo) / 2
            trace.append(BISECT)
        elif abs(step) < tol_a / 4:
            # the update is below the tolerance: step just past the predicted
            # root so the next evaluation closes the bracket from the far side
            overshoot = tol_a / 2 if step.sign() < 0 else -tol_a / 2
            candidate += overshoot
            if not lo < candidate < hi:
                candidate = lo + (hi - lo) / 2
                trace.append(BISECT)
            else:
                trace.append(STRADDLE)
        else:
            trace.append(NEWTON)
        x = candidate
    else:
        raise ConvergenceError(f"{label}: no convergence", lo, hi, iterations)
    return best, best_value, iterations, hi - lo, tuple(trace)


def residual_g(
    a: ExtReal,
    n: int,
    log_fact: Optional[ExtReal] = None,
    log_n: Optional[ExtReal] = None,
) -> ExtReal:
    """
    g(a; n) = log f(a, n) - log n!, strictly increasing in a.

    :param a: The shift, a in [0, 1].
    :param n: The argument, n >= 1.
    :param log_fact: log n! if the caller already has it.
    :param log_n: log n if the caller already has it.
    :return: g(a; n); negative at a = 0 and positive at a = 1/2.
    """
    if n < 1:
        raise DomainError(f"domain: g needs n >= 1, got {n}")
    if log_fact is None:
        log_fact = log_factorial(n)
    return log_f_and_slope(a, n, log_n)[0] - log_fact


def newton_seed(n: int) -> ExtReal:
    """
    Starting point 1/2 - 1/(24 n log(n + 1)), clamped into (0, 1/2). Burnside's
    log error behaves like 1/(24n), so the seed is close; the bracket, not the
    seed, guarantees convergence.

    :param n: The argument, n >= 1.
    :return: The seed.
    """
    seed = 0.5 - 1.0 / (24.0 * n * math.log(n + 1))
    return as_ext(min(max(seed, 2.0**-40), 0.5 - 2.0**-40))


def solve_a_n(
    n: int,
    tol_a: Optional[Tolerance] = None,
    log_fact: Optional[ExtReal] = None,
    log_n: Optional[ExtReal] = None,
) -> RootResult:
    """
    Solves f(a_n, n) = n! for a_n in (0, 1/2).

    :param n: The argument, n >= 1.
    :param tol_a: Requested bracket width; values below 1e-25 are clamped with a
    warning. Defaults to 1e-24.
    :param log_fact: log n! if the caller already has it (sweeps do).
    :param log_n: log n if the caller already has it.
    :return: The root.
    :raises DomainError: If n < 1 (0! puts log 0 into f).
    :raises ConvergenceError: If 80 iterations do not shrink the bracket.
    """
    if n < 1:
        raise DomainError(f"domain: a_n is defined for n >= 1, got {n}")
    tol = _tolerance(tol_a)
    fact = log_factorial(n) if log_fact is None else log_fact
    logn = ext_log(n) if log_n is None else log_n

    def evaluate(a: ExtReal) -> Evaluation:
        value, slope = log_f_and_slope(a, n, logn)
        return value - fact, slope

    value, residual, iterations, width, trace = _safeguarded_newton(
        evaluate, newton_seed(n), tol, increasing=True, label=f"a_{n}"
    )
    converged = width <= tol and abs(residual) <= tol_res(n, tol)
    return RootResult(value, residual, iterations, width, converged, trace)


def residual_h(a: ExtReal) -> ExtReal:
    """
    h(a) = (a + 1) - (a + 1) log(a + 1) - log(2 pi)/2, the logarithm of the
    defining equation of a_1; decreasing on [0, 1/2].

    :param a: The shift.
    :return: h(a).
    """
    shifted = as_ext(a) + ONE
    return shifted - shifted * ext_log(shifted) - HALF_LOG_2PI


def solve_a_star(tol_a: Optional[Tolerance] = None) -> RootResult:
    """
    Solves h(a) = 0 for a_star = a_1 = 0.428844044... .

    :param tol_a: Requested bracket width, as for solve_a_n.
    :return: The root.
    """
    tol = _tolerance(tol_a)

    def evaluate(a: ExtReal) -> Evaluation:
        shifted = a + ONE
        log_shifted = ext_log(shifted)
        return shifted - shifted * log_shifted - HALF_LOG_2PI, -log_shifted

    value, residual, iterations, width, trace = _safeguarded_newton(
        evaluate, newton_seed(1), tol, increasing=False, label="a_star"
    )
    converged = width <= tol and abs(residual) <= tol_res(1, tol)
    return RootResult(value, residual, iterations, width, converged, trace)
