"""burnside_sharp errors"""

from __future__ import annotations

from typing import TYPE_CHECKING, Optional

if TYPE_CHECKING:
    from .extprec import ExtReal


class BurnsideSharpError(Exception):
    """Base class of every error raised by burnside_sharp."""


class DomainError(BurnsideSharpError, ValueError):
    """An argument lies outside the domain of the operation."""


class NonFiniteError(DomainError):
    """A NaN or infinite component was handed to ExtReal."""


class RegimeError(DomainError):
    """A log-factorial regime was asked for an n it does not cover."""


class SweepRangeError(DomainError):
    """A sweep range exceeds the configured ceiling."""


class ConfigError(BurnsideSharpError, ValueError):
    """An environment setting could not be parsed."""


class MagnitudeError(BurnsideSharpError, OverflowError):
    """The leading word of a result overflowed or underflowed."""


class ConvergenceError(BurnsideSharpError, ArithmeticError):
    """
    The safeguarded Newton iteration stopped without meeting its tolerance.

    :param message: Short description of the failure.
    :param lo: Lower end of the last bracket, if one was maintained.
    :param hi: Upper end of the last bracket, if one was maintained.
    :param iterations: Number of iterations performed.
    """

    def __init__(
        self,
        message: str,
        lo: Optional[ExtReal] = None,
        hi: Optional[ExtReal] = None,
        iterations: int = 0,
    ):
        details = message
        if lo is not None and hi is not None:
            details = f"{message} (bracket [{lo!r}, {hi!r}], {iterations} iterations)"
        super().__init__(details)
        self.lo = lo
        self.hi = hi
        self.iterations = iterations


class BracketError(ConvergenceError):
    """The initial interval does not enclose a sign change."""
