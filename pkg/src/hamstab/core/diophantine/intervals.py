"""Closed intervals with exact rational endpoints.

Every real quantity in the arithmetic layer is carried as a bracket [lo, hi]
of two `Fraction`s, so sign and floor decisions are certified rather than
rounded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from ..errors import AmbiguousBracket

Rational = Union[int, Fraction]

HALF = Fraction(1, 2)


@dataclass(frozen=True, slots=True)
class RationalInterval:
    """Bracket [lo, hi] with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: Rational) -> RationalInterval:
        return cls(Fraction(x), Fraction(x))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    def contains(self, x: Rational) -> bool:
        return self.lo <= x <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def __add__(self, other: RationalInterval | Rational) -> RationalInterval:
        if isinstance(other, RationalInterval):
            return RationalInterval(self.lo + other.lo, self.hi + other.hi)
        return RationalInterval(self.lo + other, self.hi + other)

    __radd__ = __add__

    def __neg__(self) -> RationalInterval:
        return RationalInterval(-self.hi, -self.lo)

    def __sub__(self, other: RationalInterval | Rational) -> RationalInterval:
        return self + (-other)

    def __rsub__(self, other: Rational) -> RationalInterval:
        return (-self) + other

    def __mul__(self, other: RationalInterval | Rational) -> RationalInterval:
        if isinstance(other, RationalInterval):
            products = (
                self.lo * other.lo,
                self.lo * other.hi,
                self.hi * other.lo,
                self.hi * other.hi,
            )
            return RationalInterval(min(products), max(products))
        other = Fraction(other)
        if other >= 0:
            return RationalInterval(self.lo * other, self.hi * other)
        return RationalInterval(self.hi * other, self.lo * other)

    __rmul__ = __mul__

    def __abs__(self) -> RationalInterval:
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return RationalInterval(Fraction(0), max(-self.lo, self.hi))

    def reciprocal(self) -> RationalInterval:
        if self.contains_zero():
            raise ZeroDivisionError("interval contains zero")
        return RationalInterval(1 / self.hi, 1 / self.lo)

    def floor(self) -> int | None:
        """Common floor of both endpoints, or None when they disagree."""
        lo_floor = math.floor(self.lo)
        return lo_floor if lo_floor == math.floor(self.hi) else None

    def __float__(self) -> float:
        return float(self.midpoint)

    def as_floats(self) -> tuple[float, float]:
        return float(self.lo), float(self.hi)

    def __repr__(self) -> str:
        lo, hi = self.as_floats()
        return f"RationalInterval({lo!r}, {hi!r})"


def as_interval(x: RationalInterval | Rational | float | str) -> RationalInterval:
    """Coerce exact numbers (and decimal strings) to a point interval."""
    if isinstance(x, RationalInterval):
        return x
    return RationalInterval.point(Fraction(x))


def dist_to_integers(x: RationalInterval | Rational) -> RationalInterval:
    """Bracket of min_p |x - p| over integers p.

    Raises:
        AmbiguousBracket: the bracket is too wide (width >= 1/2) to bound the
            distance by anything sharper than [0, 1/2]; refine and retry.
    """
    x = as_interval(x)
    if x.width >= HALF:
        raise AmbiguousBracket(f"interval width {float(x.width)} is not below 1/2")

    nearest_lo = math.floor(x.lo + HALF)
    nearest_hi = math.floor(x.hi + HALF)
    if nearest_lo == nearest_hi:
        p = nearest_lo
        d_lo, d_hi = abs(x.lo - p), abs(x.hi - p)
        if x.lo <= p <= x.hi:
            return RationalInterval(Fraction(0), max(d_lo, d_hi))
        return RationalInterval(min(d_lo, d_hi), max(d_lo, d_hi))

    # Straddles the half-integer nearest_lo + 1/2, where the distance peaks.
    d_lo = abs(x.lo - nearest_lo)
    d_hi = abs(x.hi - nearest_hi)
    return RationalInterval(min(d_lo, d_hi), HALF)
