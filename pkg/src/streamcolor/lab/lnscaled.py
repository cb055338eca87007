"""Exact arithmetic over rational multiples of integer powers of ln 2.

Schedule recursions and the compression bound mix rationals with ln 2.
Carrying the ln 2 power symbolically keeps every identity checkable by
exact equality; order against plain rationals is decided with rational
brackets around ln 2 that are tight to 50 decimal digits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

# ln 2 = 0.69314718055994530941723212145817656807550013436025525...
# The truncation below is a strict lower bound; adding one ulp of the
# 50-digit grid gives a strict upper bound.
_LN2_SCALED = 69314718055994530941723212145817656807550013436025
LN2_LOWER = Fraction(_LN2_SCALED, 10**50)
LN2_UPPER = Fraction(_LN2_SCALED + 1, 10**50)

RationalLike = Union[int, Fraction]


class ComparisonPrecisionError(ArithmeticError):
    """Ordering could not be decided at 50-digit bracket precision."""


def _as_fraction(value) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, Fraction, Rational)):
        raise TypeError(f"expected a rational number, got {value!r}")
    return Fraction(value)


@dataclass(frozen=True)
class LnScaled:
    """An exact value coeff * (ln 2)**power with rational coeff."""

    coeff: Fraction
    power: int = 0

    def __post_init__(self):
        object.__setattr__(self, "coeff", _as_fraction(self.coeff))
        if not isinstance(self.power, int) or isinstance(self.power, bool):
            raise TypeError("power must be an int")
        if self.coeff == 0:
            # canonical zero so equality and hashing behave
            object.__setattr__(self, "power", 0)

    @classmethod
    def of(cls, value: Union["LnScaled", RationalLike]) -> "LnScaled":
        if isinstance(value, LnScaled):
            return value
        return cls(_as_fraction(value), 0)

    def __mul__(self, other):
        other = LnScaled.of(other)
        return LnScaled(self.coeff * other.coeff, self.power + other.power)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = LnScaled.of(other)
        if other.coeff == 0:
            raise ZeroDivisionError("division by zero LnScaled value")
        return LnScaled(self.coeff / other.coeff, self.power - other.power)

    def __rtruediv__(self, other):
        return LnScaled.of(other) / self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or isinstance(exponent, bool):
            raise TypeError("exponent must be an int")
        if exponent < 0 and self.coeff == 0:
            raise ZeroDivisionError("zero cannot be raised to a negative power")
        return LnScaled(self.coeff**exponent, self.power * exponent)

    def __add__(self, other):
        other = LnScaled.of(other)
        if self.coeff == 0:
            return other
        if other.coeff == 0:
            return self
        if self.power != other.power:
            raise ValueError("cannot add values with different ln2 powers")
        return LnScaled(self.coeff + other.coeff, self.power)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-LnScaled.of(other))

    def __rsub__(self, other):
        return LnScaled.of(other) + (-self)

    def __neg__(self):
        return LnScaled(-self.coeff, self.power)

    def __eq__(self, other) -> bool:
        if isinstance(other, LnScaled):
            return self.coeff == other.coeff and self.power == other.power
        if isinstance(other, (int, Fraction, Rational)):
            if self.power == 0:
                return self.coeff == other
            # a nonzero rational never equals a true ln2 power
            return self.coeff == 0 and other == 0
        return NotImplemented

    def __hash__(self):
        if self.power == 0:
            return hash(self.coeff)
        return hash((self.coeff, self.power))

    def bracket(self) -> tuple[Fraction, Fraction]:
        """Rational interval guaranteed to contain the exact value."""
        if self.power == 0 or self.coeff == 0:
            return (self.coeff, self.coeff)
        lo_pow = LN2_LOWER**self.power
        hi_pow = LN2_UPPER**self.power
        if lo_pow > hi_pow:
            lo_pow, hi_pow = hi_pow, lo_pow
        if self.coeff > 0:
            return (self.coeff * lo_pow, self.coeff * hi_pow)
        return (self.coeff * hi_pow, self.coeff * lo_pow)

    def compare(self, other) -> int:
        """-1, 0, or +1 for self < other, == other, > other (exact)."""
        other = LnScaled.of(other)
        if self.power == other.power:
            a, b = self.coeff, other.coeff
            return (a > b) - (a < b)
        lo_a, hi_a = self.bracket()
        lo_b, hi_b = other.bracket()
        if hi_a < lo_b:
            return -1
        if hi_b < lo_a:
            return 1
        # distinct ln2 powers can never coincide with each other or with a
        # rational, so an overlap means the brackets were too coarse
        raise ComparisonPrecisionError(
            f"cannot order {self!r} against {other!r} at 50-digit precision"
        )

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def to_float(self) -> float:
        try:
            coeff = float(self.coeff)
        except OverflowError:
            coeff = math.inf if self.coeff > 0 else -math.inf
        return coeff * math.log(2.0) ** self.power

    def __repr__(self) -> str:
        if self.power == 0:
            return f"LnScaled({self.coeff})"
        return f"LnScaled({self.coeff}, power={self.power})"


LN2 = LnScaled(Fraction(1), 1)
