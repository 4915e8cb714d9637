"""Quadratic Weil numbers: roots of x^2 + a x + n with a^2 <= 4n."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import iv

from . import intervals
from .field import FieldCard


@dataclass(frozen=True, order=True)
class WeilNumber:
    """beta with beta^2 + a*beta + n = 0; ``root_choice`` picks the root with
    nonnegative ("upper") or negative ("lower") imaginary part."""

    a: int
    n: int
    root_choice: str = "upper"

    def __post_init__(self):
        if self.n < 1 or self.a * self.a > 4 * self.n:
            raise ValueError(f"({self.a}, {self.n}) is not a Weil pair")
        if self.root_choice not in ("upper", "lower"):
            raise ValueError("root_choice must be 'upper' or 'lower'")

    @property
    def disc(self) -> int:
        return self.a * self.a - 4 * self.n

    @property
    def is_rational(self) -> bool:
        return self.disc == 0

    def conjugate(self) -> "WeilNumber":
        if self.is_rational:
            return self
        return WeilNumber(self.a, self.n, "lower" if self.root_choice == "upper" else "upper")

    def interval(self, prec: int = intervals.DEFAULT_PREC):
        """(re, im) enclosure of beta."""
        with intervals.workprec(prec):
            re = iv.mpf(-self.a) / 2
            im = iv.sqrt(iv.mpf(-self.disc)) / 2
            if self.root_choice == "lower":
                im = -im
            return re, im

    def __str__(self) -> str:
        return f"root[{self.root_choice}] of x^2 + ({self.a})x + {self.n}"


def enumerate_FR(n: int) -> list[WeilNumber]:
    """Every quadratic Weil number of n, ordered by a then root choice."""
    if n < 1:
        raise ValueError("n must be positive")
    amax = math.isqrt(4 * n)
    out = []
    for a in range(-amax, amax + 1):
        out.append(WeilNumber(a, n, "upper"))
        if a * a < 4 * n:
            out.append(WeilNumber(a, n, "lower"))
    return out


def representatives_FR(n: int) -> list[WeilNumber]:
    """One root per conjugate pair."""
    return [w for w in enumerate_FR(n) if w.root_choice == "upper"]


def beta_power(w: WeilNumber, M: int) -> tuple[int, int]:
    """(x, y) with beta^M = x + y*beta, exactly."""
    x, y = 1, 0
    for _ in range(M):
        x, y = -w.n * y, x - w.a * y
    return x, y


def power_trace(w: WeilNumber, M: int) -> int:
    """s_M = beta^M + conj(beta)^M via s_m = -a s_{m-1} - n s_{m-2}."""
    if M == 0:
        return 2
    s0, s1 = 2, -w.a
    for _ in range(M - 1):
        s0, s1 = s1, -w.a * s1 - w.n * s0
    return s1


def _rational_sqrt(r: Fraction) -> Fraction | None:
    if r < 0:
        return None
    num, den = math.isqrt(r.numerator), math.isqrt(r.denominator)
    if num * num == r.numerator and den * den == r.denominator:
        return Fraction(num, den)
    return None


def beta_in_field(w: WeilNumber, card: FieldCard):
    """beta as a ring element of k when beta lies in k, else None."""
    if w.is_rational:
        return card.from_int(-w.a // 2)
    for D0, s in card.imag_quadratic_subfields:
        f = _rational_sqrt(Fraction(w.disc, D0))
        if f is None:
            continue
        _, im = card.embed(s)[card.distinguished_place]
        sign = 1 if im.a > 0 else -1
        if w.root_choice == "lower":
            sign = -sign
        coords = [Fraction(sign) * f * c for c in s]
        coords[0] -= w.a
        coords = [c / 2 for c in coords]
        if any(c.denominator != 1 for c in coords):
            raise ArithmeticError(f"{w} is not integral on the card's basis")
        return tuple(int(c) for c in coords)
    return None


@dataclass(frozen=True)
class WeilPowerCheck:
    beta12: int | None
    beta24: int | None

    @property
    def beta12_rational(self) -> bool:
        return self.beta12 is not None


def weil_power_check(w: WeilNumber) -> WeilPowerCheck:
    """beta^12 and beta^24 when they are rational (None otherwise)."""
    if w.is_rational:
        b = -w.a // 2
        return WeilPowerCheck(beta12=b**12, beta24=b**24)
    return WeilPowerCheck(beta12=_collapse(w, 12), beta24=_collapse(w, 24))


def _collapse(w: WeilNumber, M: int) -> int | None:
    x, y = beta_power(w, M)
    return x if y == 0 else None
