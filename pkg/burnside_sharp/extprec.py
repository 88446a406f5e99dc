"""
Double-word real arithmetic. An ExtReal stores a real number as the unevaluated
sum of two floats, which carries about 31 significant decimal digits. Every
operation is built from the classical error-free transforms (two-sum, and
Dekker's two-product or a fused multiply-add where the interpreter has one),
so rounding errors of the leading word are recovered exactly in the trailing
word.

The kernels below work on plain ``(hi, lo)`` float pairs; ExtReal wraps them at
the public boundary and rejects non-finite components.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from typing import Optional, Union

from .errors import DomainError, MagnitudeError, NonFiniteError

Pair = tuple[float, float]
Number = Union["ExtReal", int, float]

_SPLITTER = 134217729.0  # 2**27 + 1
_SPLIT_LIMIT = 2.0**996
_EXP_MAX = 700.0
# below this the trailing word of exp(x) would be subnormal
_EXP_MIN = -670.0
_EXP_SQUARINGS = 9
_LOG1P_SERIES_LIMIT = 1.0 / 16.0
# log(1e34) / 2; atanh terms with t**(2k) below 1e-34 are dropped
_ATANH_CUTOFF = 39.15
_LOG_NODES = 64
# round(64 sqrt(1/2)) and round(64 sqrt(2))
_LOG_FIRST_NODE = 45
_LOG_LAST_NODE = 91
_SQRT_HALF = 0.7071067811865476


def _two_sum(a: float, b: float) -> Pair:
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _quick_two_sum(a: float, b: float) -> Pair:
    # requires |a| >= |b|
    s = a + b
    return s, b - (s - a)


def _split(a: float) -> Pair:
    if abs(a) > _SPLIT_LIMIT:
        scaled = a * 2.0**-28
        t = _SPLITTER * scaled
        hi = t - (t - scaled)
        return hi * 2.0**28, (scaled - hi) * 2.0**28
    t = _SPLITTER * a
    hi = t - (t - a)
    return hi, a - hi


_FMA = getattr(math, "fma", None)


def _two_prod(a: float, b: float) -> Pair:
    p = a * b
    if _FMA is not None:
        return p, float(_FMA(a, b, -p))
    a_hi, a_lo = _split(a)
    b_hi, b_lo = _split(b)
    return p, ((a_hi * b_hi - p) + a_hi * b_lo + a_lo * b_hi) + a_lo * b_lo


def _add(ah: float, al: float, bh: float, bl: float) -> Pair:
    s1, s2 = _two_sum(ah, bh)
    t1, t2 = _two_sum(al, bl)
    s2 += t1
    s1, s2 = _quick_two_sum(s1, s2)
    s2 += t2
    return _quick_two_sum(s1, s2)


def _mul(ah: float, al: float, bh: float, bl: float) -> Pair:
    p1, p2 = _two_prod(ah, bh)
    p2 += ah * bl + al * bh
    return _quick_two_sum(p1, p2)


def _mul_float(ah: float, al: float, b: float) -> Pair:
    p1, p2 = _two_prod(ah, b)
    p2 += al * b
    return _quick_two_sum(p1, p2)


def _div(ah: float, al: float, bh: float, bl: float) -> Pair:
    if bh == 0.0:
        raise MagnitudeError("division by zero")
    q1 = ah / bh
    ph, pl = _mul_float(bh, bl, q1)
    rh, rl = _add(ah, al, -ph, -pl)
    q2 = rh / bh
    ph, pl = _mul_float(bh, bl, q2)
    rh, rl = _add(rh, rl, -ph, -pl)
    q3 = rh / bh
    q1, q2 = _quick_two_sum(q1, q2)
    return _add(q1, q2, q3, 0.0)


def _inverse_factorials(last: int) -> tuple[Pair, ...]:
    result = []
    fh, fl = 1.0, 0.0
    for k in range(2, last + 1):
        fh, fl = _div(fh, fl, float(k), 0.0)
        result.append((fh, fl))
    return tuple(result)


# 1/2!, 1/3!, ..., 1/10!
_INV_FACTORIALS = _inverse_factorials(10)

LN2_PAIR: Pair = (6.931471805599452862e-01, 2.319046813846299558e-17)
PI_PAIR: Pair = (3.141592653589793116e00, 1.224646799147353207e-16)


def _expm1_reduced(rh: float, rl: float) -> Pair:
    """expm1(r) for |r| <= ln(2)/2."""
    sh = math.ldexp(rh, -_EXP_SQUARINGS)
    sl = math.ldexp(rl, -_EXP_SQUARINGS)
    ph, pl = _INV_FACTORIALS[-1]
    for ch, cl in reversed(_INV_FACTORIALS[:-1]):
        ph, pl = _mul(ph, pl, sh, sl)
        ph, pl = _add(ph, pl, ch, cl)
    ph, pl = _mul(ph, pl, sh, sl)
    ph, pl = _add(ph, pl, 1.0, 0.0)
    ph, pl = _mul(ph, pl, sh, sl)
    # (1 + p)**2 - 1 = 2p + p**2 undoes one halving without forming 1 + p
    for _ in range(_EXP_SQUARINGS):
        qh, ql = _mul(ph, pl, ph, pl)
        ph, pl = _add(2.0 * ph, 2.0 * pl, qh, ql)
    return ph, pl


def _exp(xh: float, xl: float) -> Pair:
    if xh > _EXP_MAX:
        raise MagnitudeError("exp overflow")
    if xh < _EXP_MIN:
        raise MagnitudeError("exp underflow")
    k = round(xh / LN2_PAIR[0])
    kh, kl = _mul_float(LN2_PAIR[0], LN2_PAIR[1], float(k))
    rh, rl = _add(xh, xl, -kh, -kl)
    ph, pl = _expm1_reduced(rh, rl)
    eh, el = _add(1.0, 0.0, ph, pl)
    return math.ldexp(eh, k), math.ldexp(el, k)


def _expm1(xh: float, xl: float) -> Pair:
    if abs(xh) <= 0.5 * LN2_PAIR[0]:
        return _expm1_reduced(xh, xl)
    eh, el = _exp(xh, xl)
    return _add(eh, el, -1.0, 0.0)


def _reciprocal_odds(last: int) -> tuple[Pair, ...]:
    return tuple(_div(1.0, 0.0, float(2 * j + 1), 0.0) for j in range(last + 1))


# 1, 1/3, 1/5, ..., 1/49
_INV_ODD = _reciprocal_odds(24)


def _atanh_series(th: float, tl: float) -> Pair:
    """atanh(t) for |t| <= 1/16, with just enough terms for 1e-34 relative."""
    t_abs = abs(th)
    if t_abs == 0.0:
        return th, tl
    terms = min(int(_ATANH_CUTOFF / -math.log(t_abs)) + 1, len(_INV_ODD) - 1)
    t2h, t2l = _mul(th, tl, th, tl)
    ph, pl = _INV_ODD[terms]
    for j in range(terms - 1, -1, -1):
        ph, pl = _mul(ph, pl, t2h, t2l)
        ph, pl = _add(ph, pl, *_INV_ODD[j])
    return _mul(th, tl, ph, pl)


def _log1p_series(uh: float, ul: float) -> Pair:
    # log1p(u) = 2 atanh(t) with t = u / (2 + u)
    dh, dl = _add(2.0, 0.0, uh, ul)
    th, tl = _div(uh, ul, dh, dl)
    sh, sl = _atanh_series(th, tl)
    return 2.0 * sh, 2.0 * sl


def _log_newton(mh: float, ml: float) -> Pair:
    yh, yl = math.log(mh), 0.0
    for _ in range(2):
        eh, el = _exp(-yh, -yl)
        ch, cl = _mul(mh, ml, eh, el)
        ch, cl = _add(ch, cl, -1.0, 0.0)
        yh, yl = _add(yh, yl, ch, cl)
        if abs(ch) <= 2.0**-50 * max(abs(yh), 1.0):
            break
    return yh, yl


# log(j / 64) for the nodes j / 64 covering [sqrt(1/2), sqrt(2)]
_LOG_TABLE = tuple(
    _log_newton(j / _LOG_NODES, 0.0)
    for j in range(_LOG_FIRST_NODE, _LOG_LAST_NODE + 1)
)


def _log(xh: float, xl: float) -> Pair:
    if xh <= 0.0:
        raise DomainError("log domain")
    mantissa, exponent = math.frexp(xh)
    if mantissa < _SQRT_HALF:
        exponent -= 1
    mh = math.ldexp(xh, -exponent)
    ml = math.ldexp(xl, -exponent)
    # log(m) = log(c) + 2 atanh((m - c) / (m + c)) at the nearest node c
    node = round(mh * _LOG_NODES)
    c = node / _LOG_NODES
    nh, nl = _add(mh, ml, -c, 0.0)
    dh, dl = _add(mh, ml, c, 0.0)
    th, tl = _div(nh, nl, dh, dl)
    sh, sl = _atanh_series(th, tl)
    yh, yl = _add(*_LOG_TABLE[node - _LOG_FIRST_NODE], 2.0 * sh, 2.0 * sl)
    if exponent:
        kh, kl = _mul_float(LN2_PAIR[0], LN2_PAIR[1], float(exponent))
        yh, yl = _add(yh, yl, kh, kl)
    return yh, yl


def _log1p(uh: float, ul: float) -> Pair:
    if abs(uh) < _LOG1P_SERIES_LIMIT:
        return _log1p_series(uh, ul)
    xh, xl = _add(1.0, 0.0, uh, ul)
    if xh <= 0.0:
        raise DomainError("log domain")
    return _log(xh, xl)


def _make(pair: Pair) -> "ExtReal":
    hi, lo = pair
    if not (math.isfinite(hi) and math.isfinite(lo)):
        raise MagnitudeError("magnitude overflow")
    # kernel words are floats already checked above, so __post_init__ is skipped
    result = object.__new__(ExtReal)
    object.__setattr__(result, "hi", hi)
    object.__setattr__(result, "lo", lo)
    return result


def _int_pair(value: int) -> Pair:
    try:
        hi = float(value)
    except OverflowError:
        # pylint: disable=raise-missing-from
        raise MagnitudeError("magnitude overflow")
    return _quick_two_sum(hi, float(value - int(hi)))


def _pair(value: Number) -> Pair:
    if isinstance(value, ExtReal):
        return value.hi, value.lo
    if isinstance(value, int):
        return _int_pair(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise NonFiniteError(f"non-finite operand {value!r}")
        return value, 0.0
    raise TypeError(f"unsupported operand type {type(value).__name__}")


@dataclass(frozen=True, eq=False)
class ExtReal:
    """
    A real number represented exactly as ``hi + lo``. Public operations always
    return the normalized form, in which ``|lo| <= ulp(hi) / 2``.

    :param hi: The leading word.
    :param lo: The trailing word.
    :raises NonFiniteError: If either word is NaN or infinite.
    """

    hi: float
    lo: float = 0.0

    def __post_init__(self) -> None:
        hi, lo = float(self.hi), float(self.lo)
        if not (math.isfinite(hi) and math.isfinite(lo)):
            raise NonFiniteError(f"non-finite component in ExtReal({hi!r}, {lo!r})")
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "lo", lo)

    @classmethod
    def from_int(cls, value: int) -> "ExtReal":
        """
        Converts an integer; exact for ``|value| < 2**106``.

        :param value: The integer.
        :return: The nearest ExtReal.
        """
        return cls(*_int_pair(value))

    @classmethod
    def from_decimal(cls, value: Union[str, Decimal]) -> "ExtReal":
        """
        Converts a decimal string or Decimal to the nearest double-word value.

        :param value: The decimal number.
        :return: The ExtReal closest to it.
        :raises DomainError: If the string is not a finite decimal number.
        """
        with localcontext() as ctx:
            ctx.prec = 80
            try:
                exact = Decimal(value)
            except ArithmeticError:
                # pylint: disable=raise-missing-from
                raise DomainError(f"not a decimal number: {value!r}")
            if not exact.is_finite():
                raise NonFiniteError(f"non-finite decimal {value!r}")
            hi = float(exact)
            if not math.isfinite(hi):
                raise MagnitudeError("magnitude overflow")
            lo = float(exact - Decimal(hi))
        return cls(*_quick_two_sum(hi, lo))

    def to_decimal(self) -> Decimal:
        """
        Returns ``hi + lo`` as a Decimal, rounded to 80 significant digits.

        :return: The decimal value.
        """
        with localcontext() as ctx:
            ctx.prec = 80
            return Decimal(self.hi) + Decimal(self.lo)

    def normalized(self) -> "ExtReal":
        """
        Renormalizes the pair so that ``hi`` is the rounded value of ``hi + lo``.

        :return: The normalized representation; idempotent on public results.
        """
        return ExtReal(*_two_sum(self.hi, self.lo))

    def is_zero(self) -> bool:
        """Checks whether the value is zero."""
        return self.hi == 0.0 and self.lo == 0.0

    def sign(self) -> int:
        """Returns -1, 0 or 1."""
        if self.hi == 0.0:
            return (self.lo > 0.0) - (self.lo < 0.0)
        return 1 if self.hi > 0.0 else -1

    def __float__(self) -> float:
        return self.hi + self.lo

    def __str__(self) -> str:
        return format(self.to_decimal(), ".32g")

    def __hash__(self) -> int:
        return hash(_two_sum(self.hi, self.lo))

    def _compare(self, other: object) -> Optional[int]:
        if not isinstance(other, (ExtReal, int, float)):
            return None
        bh, bl = _pair(other)
        dh, dl = _add(self.hi, self.lo, -bh, -bl)
        if dh == 0.0:
            return (dl > 0.0) - (dl < 0.0)
        return 1 if dh > 0.0 else -1

    def __eq__(self, other: object) -> bool:
        result = self._compare(other)
        if result is None:
            return NotImplemented
        return bool(result == 0)

    def __lt__(self, other: Number) -> bool:
        result = self._compare(other)
        if result is None:
            return NotImplemented
        return bool(result < 0)

    def __le__(self, other: Number) -> bool:
        result = self._compare(other)
        if result is None:
            return NotImplemented
        return bool(result <= 0)

    def __gt__(self, other: Number) -> bool:
        result = self._compare(other)
        if result is None:
            return NotImplemented
        return bool(result > 0)

    def __ge__(self, other: Number) -> bool:
        result = self._compare(other)
        if result is None:
            return NotImplemented
        return bool(result >= 0)

    def __neg__(self) -> "ExtReal":
        return ExtReal(-self.hi, -self.lo)

    def __abs__(self) -> "ExtReal":
        return -self if self.sign() < 0 else self

    def __add__(self, other: Number) -> "ExtReal":
        return ext_add(self, other)

    def __radd__(self, other: Number) -> "ExtReal":
        return ext_add(other, self)

    def __sub__(self, other: Number) -> "ExtReal":
        return ext_sub(self, other)

    def __rsub__(self, other: Number) -> "ExtReal":
        return ext_sub(other, self)

    def __mul__(self, other: Number) -> "ExtReal":
        return ext_mul(self, other)

    def __rmul__(self, other: Number) -> "ExtReal":
        return ext_mul(other, self)

    def __truediv__(self, other: Number) -> "ExtReal":
        return ext_div(self, other)

    def __rtruediv__(self, other: Number) -> "ExtReal":
        return ext_div(other, self)


ZERO = ExtReal(0.0)
ONE = ExtReal(1.0)
HALF = ExtReal(0.5)
LN2 = ExtReal(*LN2_PAIR)
PI = ExtReal(*PI_PAIR)


def ext_add(x: Number, y: Number) -> ExtReal:
    """
    Adds two numbers in double-word arithmetic.

    :param x: The first summand.
    :param y: The second summand.
    :return: The normalized sum.
    :raises MagnitudeError: If the leading word overflows.
    """
    return _make(_add(*_pair(x), *_pair(y)))


def ext_sub(x: Number, y: Number) -> ExtReal:
    """
    Subtracts y from x in double-word arithmetic.

    :param x: The minuend.
    :param y: The subtrahend.
    :return: The normalized difference.
    """
    bh, bl = _pair(y)
    return _make(_add(*_pair(x), -bh, -bl))


def ext_mul(x: Number, y: Number) -> ExtReal:
    """
    Multiplies two numbers in double-word arithmetic.

    :param x: The first factor.
    :param y: The second factor.
    :return: The normalized product.
    :raises MagnitudeError: If the leading word overflows, or underflows to zero
    while both factors are non-zero.
    """
    ah, al = _pair(x)
    bh, bl = _pair(y)
    result = _make(_mul(ah, al, bh, bl))
    if result.hi == 0.0 and ah != 0.0 and bh != 0.0:
        raise MagnitudeError("magnitude underflow")
    return result


def ext_div(x: Number, y: Number) -> ExtReal:
    """
    Divides x by y in double-word arithmetic.

    :param x: The dividend.
    :param y: The divisor.
    :return: The normalized quotient.
    :raises MagnitudeError: On division by zero or overflow.
    """
    return _make(_div(*_pair(x), *_pair(y)))


def ext_neg(x: Number) -> ExtReal:
    """Returns -x."""
    hi, lo = _pair(x)
    return ExtReal(-hi, -lo)


def ext_abs(x: Number) -> ExtReal:
    """Returns |x|."""
    hi, lo = _pair(x)
    return ExtReal(-hi, -lo) if hi < 0.0 else ExtReal(hi, lo)


def ext_ldexp(x: Number, exponent: int) -> ExtReal:
    """Returns x * 2**exponent, exactly unless a word leaves the float range."""
    hi, lo = _pair(x)
    return _make((math.ldexp(hi, exponent), math.ldexp(lo, exponent)))


def ext_exp(x: Number) -> ExtReal:
    """
    Computes exp(x) by reducing ``x = k*ln2 + r``, evaluating expm1(r / 2**9)
    with a Taylor polynomial and squaring back.

    :param x: The exponent; must lie in [-670, 700].
    :return: exp(x) with relative error below 1e-28.
    :raises MagnitudeError: "exp overflow" or "exp underflow" outside the range.
    """
    return _make(_exp(*_pair(x)))


def ext_expm1(x: Number) -> ExtReal:
    """
    Computes exp(x) - 1 without cancellation for small x.

    :param x: The exponent.
    :return: exp(x) - 1.
    """
    return _make(_expm1(*_pair(x)))


def ext_log(x: Number) -> ExtReal:
    """
    Computes the natural logarithm. The argument is scaled by a power of two
    into [sqrt(1/2), sqrt(2)), reduced against the nearest node j/64 of a table
    of logarithms built once at import, and the remaining factor, within 1/128
    of 1, is finished with an atanh series of at most eight terms.

    :param x: A positive number.
    :return: log(x) with relative error below 1e-28.
    :raises DomainError: "log domain" if x <= 0.
    """
    hi, lo = _pair(x)
    if hi == 0.0 and lo == 0.0:
        raise DomainError("log domain")
    return _make(_log(hi, lo))


def ext_log1p(x: Number) -> ExtReal:
    """
    Computes log(1 + x) without cancellation for small x.

    :param x: A number greater than -1.
    :return: log(1 + x).
    :raises DomainError: "log domain" if x <= -1.
    """
    return _make(_log1p(*_pair(x)))


def as_ext(value: Number) -> ExtReal:
    """
    Converts an int, float or ExtReal to ExtReal, exactly.

    :param value: The number.
    :return: The same value as an ExtReal.
    """
    if isinstance(value, ExtReal):
        return value
    return ExtReal(*_pair(value))


HALF_LOG_2PI = ext_ldexp(ext_log(ext_ldexp(PI, 1)), -1)
