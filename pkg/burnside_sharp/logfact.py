"""
log n! in double-word arithmetic.

Two regimes cover 0 <= n <= 10**9 and overlap on [10**5, 2*10**6]:

* the exact-sum regime accumulates log k for k = 2..n,
* the asymptotic regime sums the Stirling-De Moivre series with five Bernoulli
  corrections.

The dispatcher uses the exact sum up to 10**6 and the series above; the overlap
lets the tests compare both regimes on every n of the seam.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterator, Optional

from .errors import DomainError, RegimeError
from .extprec import HALF_LOG_2PI, ZERO, ExtReal, ext_log
from .iterable import Stream

logger = logging.getLogger(__name__)

N_EXACT_MAX = 2_000_000
N_SERIES_MIN = 100_000
N_REGIME_SEAM = 1_000_000

# the product of a block of factors stays below the float range before its log
# is taken
_BLOCK_BITS = 1000
_PROGRESS_EVERY = 100_000

# B_2k / (2k (2k - 1)) for k = 1..5
STIRLING_COEFFICIENTS: tuple[tuple[int, int], ...] = (
    (1, 12),
    (-1, 360),
    (1, 1260),
    (-1, 1680),
    (1, 1188),
)


class Regime(Enum):
    """How a log-factorial value was obtained."""

    EXACT_SUM = "exact-sum"
    ASYMPTOTIC_SERIES = "asymptotic-series"


@dataclass(frozen=True)
class LogFactorial:
    """
    log n! together with the regime that produced it.

    :param n: The argument.
    :param value: The natural logarithm of n!.
    :param regime: The regime used.
    :param log_n: log n when the producer had it at hand (None for n = 0).
    """

    n: int
    value: ExtReal
    regime: Regime
    log_n: Optional[ExtReal] = None


def _check_argument(n: int) -> None:
    if n < 0:
        raise DomainError(f"domain: log n! needs n >= 0, got {n}")


def log_factorial_exact(n: int) -> ExtReal:
    """
    Sums log k for k = 2..n. Consecutive factors are multiplied exactly as
    integers until the product nears the float range, then the double-word log of
    the block is added, so every block contributes a single rounding of 2**-106.

    :param n: The argument, 0 <= n <= N_EXACT_MAX.
    :return: log n!.
    :raises RegimeError: If n exceeds N_EXACT_MAX.
    """
    _check_argument(n)
    if n > N_EXACT_MAX:
        raise RegimeError(f"regime exceeded: exact sum covers n <= {N_EXACT_MAX}")
    total = ZERO
    block = 1
    for k in range(2, n + 1):
        block *= k
        if block.bit_length() >= _BLOCK_BITS:
            total += ext_log(ExtReal.from_int(block))
            block = 1
    if block > 1:
        total += ext_log(ExtReal.from_int(block))
    return total


def stirling_partial_sum(
    n: int,
    terms: int = len(STIRLING_COEFFICIENTS),
    log_n: Optional[ExtReal] = None,
) -> ExtReal:
    """
    Evaluates n log n - n + log(2 pi n)/2 plus the first ``terms`` Bernoulli
    corrections 1/(12n) - 1/(360n**3) + ... . Truncating after a positive term
    overestimates log n!, after a negative term it underestimates.

    :param n: The argument, n >= 1.
    :param terms: Number of corrections, 0 to 5.
    :param log_n: log n if the caller already has it.
    :return: The truncated series.
    """
    if n < 1:
        raise DomainError(f"domain: the Stirling series needs n >= 1, got {n}")
    if not 0 <= terms <= len(STIRLING_COEFFICIENTS):
        raise DomainError(f"domain: terms must lie in [0, 5], got {terms}")
    if log_n is None:
        log_n = ext_log(n)
    value = (ExtReal.from_int(n) + 0.5) * log_n - n + HALF_LOG_2PI
    if terms == 0:
        return value
    x = 1 / ExtReal.from_int(n)
    x2 = x * x
    tail = ZERO
    for numerator, denominator in reversed(STIRLING_COEFFICIENTS[:terms]):
        tail = tail * x2 + ExtReal(numerator) / denominator
    return value + tail * x


def log_factorial_series(n: int) -> ExtReal:
    """
    log n! from the asymptotic series; the first omitted term is below 1e-40
    for n >= N_SERIES_MIN.

    :param n: The argument, n >= N_SERIES_MIN.
    :return: log n!.
    :raises RegimeError: If n is below the regime floor.
    """
    _check_argument(n)
    if n < N_SERIES_MIN:
        raise RegimeError(f"regime exceeded: the series covers n >= {N_SERIES_MIN}")
    return stirling_partial_sum(n)


@lru_cache(maxsize=1024)
def log_factorial(n: int) -> ExtReal:
    """
    log n!, from the exact sum for n <= 10**6 and from the series above.

    :param n: The argument, n >= 0.
    :return: log n!.
    """
    _check_argument(n)
    if n <= N_REGIME_SEAM:
        return log_factorial_exact(n)
    return log_factorial_series(n)


def regime_of(n: int) -> Regime:
    """Returns the regime the dispatcher uses for n."""
    _check_argument(n)
    return Regime.EXACT_SUM if n <= N_REGIME_SEAM else Regime.ASYMPTOTIC_SERIES


def log_factorial_sweep(n_from: int, n_to: int) -> Stream[LogFactorial]:
    """
    Streams log n! for n_from <= n <= n_to with a running sum, so the whole sweep
    costs one logarithm per n. The sum is seeded with log (n_from - 1)!.

    :param n_from: First n, >= 0.
    :param n_to: Last n, <= N_EXACT_MAX.
    :return: A Stream of LogFactorial records carrying log n as well.
    :raises RegimeError: If n_to exceeds N_EXACT_MAX.
    """
    _check_argument(n_from)
    if n_to < n_from:
        raise DomainError(f"domain: empty sweep [{n_from}, {n_to}]")
    if n_to > N_EXACT_MAX:
        raise RegimeError(f"regime exceeded: sweeps cover n <= {N_EXACT_MAX}")

    def generator() -> Iterator[LogFactorial]:
        value = log_factorial(n_from - 1) if n_from >= 1 else ZERO
        for n in range(n_from, n_to + 1):
            log_n: Optional[ExtReal] = None
            if n >= 2:
                log_n = ext_log(n)
                value += log_n
            elif n == 1:
                log_n = ZERO
            if n % _PROGRESS_EVERY == 0:
                logger.info("log-factorial sweep reached n=%d", n)
            yield LogFactorial(n, value, Regime.EXACT_SUM, log_n)

    return Stream(generator())
