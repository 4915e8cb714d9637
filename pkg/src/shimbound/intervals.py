"""Thin helpers over mpmath's interval context (outward rounding)."""

from __future__ import annotations

from contextlib import contextmanager
from fractions import Fraction

import mpmath
from mpmath import iv

DEFAULT_PREC = 128
PRECISION_CAP = 16384


@contextmanager
def workprec(prec: int):
    """Set the interval context's working precision (bits) for a block."""
    saved = iv.prec
    iv.prec = prec
    try:
        yield
    finally:
        iv.prec = saved


def exact(x, prec: int | None = None):
    """Interval enclosing an int, Fraction or decimal string."""
    if isinstance(x, Fraction):
        return iv.mpf(x.numerator) / iv.mpf(x.denominator)
    if isinstance(x, str):
        return iv.mpf(x)
    return iv.mpf(x)


def endpoints(x):
    """Exact (lo, hi) endpoints as mpmath.mpf (no rounding)."""
    lo, hi = x._mpi_
    bits = max(lo[3], hi[3], 53) + 8
    with mpmath.workprec(bits):
        return mpmath.mpf(lo), mpmath.mpf(hi)


def from_mid_rad(mid: str, rad: str):
    m = iv.mpf(mid)
    r = iv.mpf(rad)
    return iv.mpf([(m - r).a, (m + r).b])


def imax1(x):
    """max(1, x) on an interval."""
    one = iv.mpf(1)
    lo = x.a if x.a > 1 else one
    hi = x.b if x.b > 1 else one
    return iv.mpf([lo, hi])


def hull(x, y):
    return iv.mpf([min(x.a, y.a), max(x.b, y.b)])


def width(x):
    return x.b - x.a


def rel_radius(x) -> float:
    lo, hi = endpoints(x)
    mag = max(abs(lo), abs(hi))
    if mag == 0:
        return 0.0
    with mpmath.workprec(64):
        return float((hi - lo) / 2 / mag)


def contains(x, value) -> bool:
    """True when the exact value (int or Fraction) lies in the interval."""
    value = Fraction(value)
    bits = max(_bits(x), value.numerator.bit_length() + 16, value.denominator.bit_length() + 16)
    with workprec(bits):
        v = exact(value)
        return x.a <= v.a and v.b <= x.b


def _bits(x) -> int:
    lo, hi = x._mpi_
    return max(lo[3], hi[3], 53) + 16


def fmt(x, digits: int = 30) -> str:
    """Render as 'midpoint ± radius' with the radius rounded outward."""
    a, b = endpoints(x)
    with mpmath.workprec(max(_bits(x), 4 * digits)):
        mid = (a + b) / 2
        rad = (b - a) / 2
        mid_s = mpmath.nstr(mid, digits, min_fixed=-5, max_fixed=25)
        slack = abs(mid) * mpmath.mpf(10) ** (1 - digits)
        rad_s = mpmath.nstr((rad + slack) * mpmath.mpf("1.01") + mpmath.mpf(10) ** -(digits + 40), 3)
    return f"{mid_s} ± {rad_s}"


def upper_str(x, digits: int = 20) -> str:
    """Decimal string >= every point of the interval."""
    hi = endpoints(x)[1]
    with mpmath.workprec(max(_bits(x), 4 * digits)):
        bumped = hi + abs(hi) * mpmath.mpf(10) ** (1 - digits) + mpmath.mpf(10) ** -(digits + 40)
        return mpmath.nstr(bumped, digits, min_fixed=-5, max_fixed=digits)


def log10_parts(x) -> tuple[str, str]:
    """(upper bound for log10, leading mantissa digits) of a positive interval's upper end."""
    hi = iv.mpf(x.b)
    lg = iv.log10(hi)
    top = endpoints(lg)[1]
    k = int(mpmath.floor(top))
    mant = iv.mpf(10) ** (lg - k)
    return upper_str(lg), mpmath.nstr(endpoints(mant)[1], 15)
