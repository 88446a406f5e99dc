"""
The family f(a, n) = sqrt(2 pi) * ((n + a) / e)**(n + a) and its named members,
evaluated in log space:

    log f(a, n) = log(2 pi) / 2 + (n + a) * (log(n + a) - 1)

Stirling's formula is n**n e**-n sqrt(2 pi n); Burnside's formula is f(1/2, n).
The sharp bounds are f(a_star, n) < n! < f(1/2, n), where a_star solves
f(a, 1) = 1. Values of n! overflow floats near n = 171, so every comparison is
made between logarithms.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .errors import DomainError
from .extprec import (
    HALF,
    HALF_LOG_2PI,
    ExtReal,
    Number,
    as_ext,
    ext_expm1,
    ext_log,
    ext_log1p,
)
from .logfact import N_REGIME_SEAM, log_factorial, stirling_partial_sum

_UNIT_ROUNDOFF = 2.0**-104
_BUDGET_SAFETY = 16.0

# a comparison holds strictly when the gap exceeds this multiple of error_budget
STRICTNESS_FACTOR = 10.0


class _SolvedConstant:
    """a_star, solved on first use and then only read."""

    def __init__(self) -> None:
        self._value: Optional[ExtReal] = None
        self._lock = threading.Lock()

    def get(self) -> ExtReal:
        """Returns the cached root, solving it under the lock on first use."""
        value = self._value
        if value is None:
            with self._lock:
                if self._value is None:
                    # pylint: disable-next=import-outside-toplevel,cyclic-import
                    from .solver import solve_a_star

                    self._value = solve_a_star().value
                value = self._value
        return value


_A_STAR = _SolvedConstant()


def a_star() -> ExtReal:
    """
    The best lower-bound constant, root of (a+1) - (a+1)log(a+1) - log(2 pi)/2.
    It always comes from the solver, never from a decimal literal.

    :return: a_star = 0.428844044...
    """
    return _A_STAR.get()


class ApproxTag(Enum):
    """Approximation families."""

    STIRLING = "stirling"
    BURNSIDE = "burnside"
    SHARP_LOWER = "sharp-lower"
    SHARP_UPPER = "sharp-upper"
    GENERALIZED = "generalized"


@dataclass(frozen=True)
class ApproxKind:
    """
    One member of the approximation family.

    :param tag: The family.
    :param a: The shift; None for Stirling, a_star for SharpLower, 1/2 for
    Burnside and SharpUpper, caller-chosen (>= 0) for Generalized.
    """

    tag: ApproxTag
    a: Optional[ExtReal] = None

    def __post_init__(self) -> None:
        if self.tag is ApproxTag.STIRLING:
            if self.a is not None:
                raise DomainError("domain: Stirling's formula takes no shift")
            return
        if self.tag is ApproxTag.GENERALIZED:
            if self.a is None or self.a < 0:
                raise DomainError("domain: a generalized shift must be >= 0")
            return
        fixed = a_star() if self.tag is ApproxTag.SHARP_LOWER else HALF
        if self.a is None:
            object.__setattr__(self, "a", fixed)
        elif self.a != fixed:
            raise DomainError(f"domain: {self.tag.value} has the fixed shift {fixed}")

    @classmethod
    def stirling(cls) -> "ApproxKind":
        """n**n e**-n sqrt(2 pi n)."""
        return cls(ApproxTag.STIRLING)

    @classmethod
    def burnside(cls) -> "ApproxKind":
        """sqrt(2 pi) ((n + 1/2)/e)**(n + 1/2)."""
        return cls(ApproxTag.BURNSIDE)

    @classmethod
    def sharp_lower(cls) -> "ApproxKind":
        """f(a_star, n)."""
        return cls(ApproxTag.SHARP_LOWER)

    @classmethod
    def sharp_upper(cls) -> "ApproxKind":
        """f(1/2, n)."""
        return cls(ApproxTag.SHARP_UPPER)

    @classmethod
    def generalized(cls, a: Number) -> "ApproxKind":
        """f(a, n) for any a >= 0."""
        return cls(ApproxTag.GENERALIZED, as_ext(a))


def log_f_and_slope(
    a: Number,
    n: int,
    log_n: Optional[ExtReal] = None,
) -> tuple[ExtReal, ExtReal]:
    """
    Evaluates log f(a, n) and its derivative in a, which is log(n + a) because
    f'(a) = f(a) log(n + a).

    :param a: The shift, a >= 0.
    :param n: The argument, n >= 0; n = 0 needs a > 0.
    :param log_n: log n if the caller already has it; log(n + a) is then formed
    as log n + log1p(a/n).
    :return: (log f(a, n), log(n + a)).
    :raises DomainError: "domain" for a < 0 or n < 0, "singular corner" for
    a = n = 0.
    """
    shift = as_ext(a)
    if shift.sign() < 0:
        raise DomainError(f"domain: the shift must be >= 0, got {shift}")
    if n < 0:
        raise DomainError(f"domain: n must be >= 0, got {n}")
    if n == 0:
        if shift.is_zero():
            raise DomainError("singular corner: f(0) at n = 0 needs log 0")
        log_shifted = ext_log(shift)
    elif log_n is not None:
        log_shifted = log_n + ext_log1p(shift / n)
    else:
        log_shifted = ext_log(shift + n)
    value = HALF_LOG_2PI + (shift + n) * (log_shifted - 1)
    return value, log_shifted


def log_f(a: Number, n: int, log_n: Optional[ExtReal] = None) -> ExtReal:
    """
    log f(a, n) = log(2 pi)/2 + (n + a)(log(n + a) - 1).

    :param a: The shift, a >= 0.
    :param n: The argument.
    :param log_n: Optional precomputed log n.
    :return: log f(a, n).
    """
    return log_f_and_slope(a, n, log_n)[0]


def _check_n(n: int) -> None:
    if n < 1:
        raise DomainError(f"domain: n must be >= 1, got {n}")


def log_stirling(n: int, log_n: Optional[ExtReal] = None) -> ExtReal:
    """
    log of Stirling's formula, n log n - n + log(2 pi n)/2.

    :param n: The argument, n >= 1.
    :param log_n: Optional precomputed log n.
    :return: The logarithm of n**n e**-n sqrt(2 pi n).
    """
    _check_n(n)
    return stirling_partial_sum(n, 0, log_n)


def log_burnside(n: int, log_n: Optional[ExtReal] = None) -> ExtReal:
    """log of Burnside's formula, log f(1/2, n)."""
    _check_n(n)
    return log_f(HALF, n, log_n)


def log_sharp_lower(n: int, log_n: Optional[ExtReal] = None) -> ExtReal:
    """log f(a_star, n), the sharp lower bound of log n!."""
    _check_n(n)
    return log_f(a_star(), n, log_n)


def log_sharp_upper(n: int, log_n: Optional[ExtReal] = None) -> ExtReal:
    """log f(1/2, n), the sharp upper bound of log n!."""
    _check_n(n)
    return log_f(HALF, n, log_n)


def log_approx(kind: ApproxKind, n: int, log_n: Optional[ExtReal] = None) -> ExtReal:
    """
    Evaluates any member of the family in log space.

    :param kind: The approximation.
    :param n: The argument, n >= 1.
    :param log_n: Optional precomputed log n.
    :return: The logarithm of the approximation of n!.
    """
    if kind.tag is ApproxTag.STIRLING:
        return log_stirling(n, log_n)
    _check_n(n)
    assert kind.a is not None
    return log_f(kind.a, n, log_n)


def signed_rel_error(
    kind: ApproxKind,
    n: int,
    log_fact: Optional[ExtReal] = None,
    log_n: Optional[ExtReal] = None,
) -> ExtReal:
    """
    Signed relative error approx/n! - 1, computed as expm1 of the log gap.

    :param kind: The approximation.
    :param n: The argument, n >= 1.
    :param log_fact: log n! if the caller already has it.
    :param log_n: Optional precomputed log n.
    :return: Positive when the approximation overestimates n!.
    """
    if log_fact is None:
        log_fact = log_factorial(n)
    return ext_expm1(log_approx(kind, n, log_n) - log_fact)


def error_budget(n: int) -> float:
    """
    Worst-case absolute error of a log-space comparison at n: roundoff on terms
    of size (n + 1) log(n + 1), plus the per-term error accumulated by the exact
    log-factorial sum up to 10**6, each word carrying a unit roundoff of 2**-104.

    :param n: The argument, n >= 1.
    :return: The error budget; a gap is significant above STRICTNESS_FACTOR times it.
    """
    _check_n(n)
    log_scale = math.log(n + 1)
    magnitude = 1.0 + (n + 1) * log_scale
    accumulated = n * (1.0 + log_scale) if n <= N_REGIME_SEAM else magnitude
    return _BUDGET_SAFETY * _UNIT_ROUNDOFF * (magnitude + accumulated)
