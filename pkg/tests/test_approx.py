# pylint: disable=missing-module-docstring,missing-function-docstring

import mpmath
import pytest

from burnside_sharp import (
    ApproxKind,
    ApproxTag,
    DomainError,
    ExtReal,
    a_star,
    error_budget,
    log_approx,
    log_burnside,
    log_f,
    log_factorial,
    log_sharp_lower,
    log_sharp_upper,
    log_stirling,
    signed_rel_error,
)
from burnside_sharp.approx import log_f_and_slope
from burnside_sharp.extprec import as_ext, ext_log

mpmath.mp.dps = 60


def mpf(x: ExtReal) -> mpmath.mpf:
    return mpmath.mpf(x.hi) + mpmath.mpf(x.lo)


def oracle_log_f(a: float, n: int) -> mpmath.mpf:
    shifted = mpmath.mpf(n) + mpmath.mpf(a)
    return mpmath.log(2 * mpmath.pi) / 2 + shifted * (mpmath.log(shifted) - 1)


def oracle_a_star() -> mpmath.mpf:
    return mpmath.findroot(
        lambda a: (a + 1) - (a + 1) * mpmath.log(a + 1) - mpmath.log(2 * mpmath.pi) / 2,
        mpmath.mpf("0.43"),
    )


@pytest.mark.parametrize("a", [0.0, 0.25, 0.5, 1.0])
@pytest.mark.parametrize("n", [1, 10, 1000, 10**6])
def test_log_f_matches_oracle(a: float, n: int) -> None:
    expected = oracle_log_f(a, n)
    assert float(abs(mpf(log_f(a, n)) - expected)) <= 1e-27 * max(1, abs(expected))
    with_log_n = log_f(a, n, ext_log(n))
    assert float(abs(mpf(with_log_n) - expected)) <= 1e-27 * max(1, abs(expected))


def test_slope_is_log_of_shifted_argument() -> None:
    _, slope = log_f_and_slope(0.5, 9)
    assert float(abs(mpf(slope) - mpmath.log(mpmath.mpf("9.5")))) <= 1e-30


def test_log_f_at_n_zero() -> None:
    expected = oracle_log_f(0.5, 0)
    assert float(abs(mpf(log_f(0.5, 0)) - expected)) <= 1e-30


def test_log_f_domain() -> None:
    with pytest.raises(DomainError, match="singular corner"):
        log_f(0, 0)
    with pytest.raises(DomainError):
        log_f(-0.1, 3)
    with pytest.raises(DomainError):
        log_f(0.5, -1)


def test_a_star_matches_oracle() -> None:
    value = a_star()
    assert float(abs(mpf(value) - oracle_a_star())) <= 1e-25
    assert str(value).startswith("0.428844044")
    assert a_star() is value


def test_approx_kinds() -> None:
    assert ApproxKind.stirling().a is None
    assert ApproxKind.burnside().a == 0.5
    assert ApproxKind.sharp_upper().a == 0.5
    assert ApproxKind.sharp_lower().a == a_star()
    assert ApproxKind.generalized(0.3).a == 0.3
    assert ApproxKind.generalized(0.3).tag is ApproxTag.GENERALIZED


def test_approx_kind_validation() -> None:
    with pytest.raises(DomainError):
        ApproxKind.generalized(-1)
    with pytest.raises(DomainError):
        ApproxKind(ApproxTag.BURNSIDE, as_ext(0.3))
    with pytest.raises(DomainError):
        ApproxKind(ApproxTag.STIRLING, as_ext(0.5))
    with pytest.raises(DomainError):
        ApproxKind(ApproxTag.GENERALIZED)


def test_named_members() -> None:
    n = 25
    assert log_approx(ApproxKind.burnside(), n) == log_burnside(n)
    assert log_approx(ApproxKind.sharp_upper(), n) == log_sharp_upper(n)
    assert log_approx(ApproxKind.sharp_lower(), n) == log_sharp_lower(n)
    assert log_approx(ApproxKind.stirling(), n) == log_stirling(n)
    assert log_approx(ApproxKind.generalized(0.5), n) == log_burnside(n)
    expected = 25 * mpmath.log(25) - 25 + mpmath.log(2 * mpmath.pi * 25) / 2
    assert float(abs(mpf(log_stirling(n)) - expected)) <= 1e-28
    with pytest.raises(DomainError):
        log_burnside(0)


def test_relative_errors_at_one() -> None:
    stirling = float(signed_rel_error(ApproxKind.stirling(), 1))
    burnside = float(signed_rel_error(ApproxKind.burnside(), 1))
    assert stirling == pytest.approx(-0.0778, abs=5e-5)
    assert burnside == pytest.approx(0.0275, abs=5e-5)


@pytest.mark.parametrize("n", [1, 2, 3, 10, 50, 1000])
def test_burnside_overestimates_and_stirling_underestimates(n: int) -> None:
    log_fact = log_factorial(n)
    assert signed_rel_error(ApproxKind.burnside(), n, log_fact).sign() == 1
    assert signed_rel_error(ApproxKind.stirling(), n, log_fact).sign() == -1


def test_relative_error_is_accurate_for_large_n() -> None:
    n = 10**5
    expected = mpmath.expm1(oracle_log_f(0.5, n) - mpmath.loggamma(n + 1))
    error = signed_rel_error(ApproxKind.burnside(), n)
    assert float(abs(mpf(error) - expected) / expected) <= 1e-12


def test_error_budget() -> None:
    budgets = [error_budget(n) for n in (1, 10, 1000, 10**6, 10**9)]
    assert all(0 < budget < 1e-15 for budget in budgets)
    assert budgets == sorted(budgets)
    assert error_budget(1) < 1e-29
    with pytest.raises(DomainError):
        error_budget(0)


def test_stirling_gap_lies_in_the_robbins_bracket() -> None:
    for n in range(1, 1001):
        gap = log_factorial(n) - log_stirling(n)
        assert 1 / ExtReal.from_int(12 * n + 1) < gap < 1 / ExtReal.from_int(12 * n), n


@pytest.mark.parametrize("n", [1, 2, 10, 1000, 10**6])
def test_family_increases_with_the_shift(n: int) -> None:
    shifts = [as_ext(k / 8) for k in range(9)]
    shifts += [a_star(), a_star() + 1e-20]
    shifts.sort()
    values = [log_f(a, n) for a in shifts]
    assert all(lower < upper for lower, upper in zip(values, values[1:]))
