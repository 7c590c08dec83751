"""Closed intervals with exact rational endpoints.

No rounding is involved, so every enclosure is rigorous.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .poly_core import as_fraction


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = as_fraction(self.lo), as_fraction(self.hi)
        if lo > hi:
            raise ValueError("empty interval")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, v) -> "Interval":
        v = as_fraction(v)
        return cls(v, v)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, v) -> bool:
        return self.lo <= v <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def sign(self) -> int:
        """+1 / -1 when the interval excludes zero, else 0."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        return 0

    def magnitude(self) -> Fraction:
        return max(abs(self.lo), abs(self.hi))

    @staticmethod
    def _co(v) -> "Interval":
        return v if isinstance(v, Interval) else Interval.point(v)

    def __add__(self, other):
        o = self._co(other)
        return Interval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        o = self._co(other)
        return Interval(self.lo - o.hi, self.hi - o.lo)

    def __rsub__(self, other):
        return self._co(other) - self

    def __mul__(self, other):
        o = self._co(other)
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(min(ps), max(ps))

    __rmul__ = __mul__

    def reciprocal(self) -> "Interval":
        if self.contains_zero():
            raise ZeroDivisionError("interval contains zero")
        return Interval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        return self * self._co(other).reciprocal()

    def __rtruediv__(self, other):
        return self._co(other) * self.reciprocal()

    def __pow__(self, n: int):
        if n == 0:
            return Interval.point(1)
        if n % 2 == 1 or self.lo >= 0:
            a, b = self.lo ** n, self.hi ** n
            return Interval(min(a, b), max(a, b))
        if self.hi <= 0:
            return Interval(self.hi ** n, self.lo ** n)
        return Interval(0, max(self.lo ** n, self.hi ** n))

    def __float__(self):
        return float(self.mid())

    def __repr__(self):
        return f"[{float(self.lo):.12g}, {float(self.hi):.12g}]"


def horner(coeffs, x: Interval) -> Interval:
    """Evaluate an ascending coefficient list at an interval."""
    r = Interval.point(0)
    for c in reversed(coeffs):
        r = r * x + c
    return r


def solve_interval_system(a, b):
    """Gaussian elimination on a square interval system (no pivot search).

    Raises ZeroDivisionError when a pivot interval contains zero.
    """
    n = len(a)
    m = [list(row) + [bv] for row, bv in zip(a, b)]
    for k in range(n):
        piv = m[k][k]
        if piv.contains_zero():
            # swap with a later row whose entry excludes zero
            for i in range(k + 1, n):
                if not m[i][k].contains_zero():
                    m[k], m[i] = m[i], m[k]
                    piv = m[k][k]
                    break
            else:
                raise ZeroDivisionError("singular interval pivot")
        for i in range(k + 1, n):
            f = m[i][k] / piv
            m[i] = [vi - f * vk for vi, vk in zip(m[i], m[k])]
    x = [None] * n
    for i in range(n - 1, -1, -1):
        s = m[i][n]
        for j in range(i + 1, n):
            s = s - m[i][j] * x[j]
        x[i] = s / m[i][i]
    return x


class FixedInterval:
    """Interval with endpoints lo/2^bits, hi/2^bits and outward rounding.

    Integer endpoints avoid the gcd normalization of Fraction arithmetic;
    every operation rounds lo down and hi up, so enclosures stay rigorous.
    """

    __slots__ = ("lo", "hi", "bits")

    def __init__(self, lo: int, hi: int, bits: int):
        self.lo, self.hi, self.bits = lo, hi, bits

    @classmethod
    def of(cls, v, bits: int) -> "FixedInterval":
        if isinstance(v, FixedInterval):
            return v
        if isinstance(v, Interval):
            lo, hi = v.lo, v.hi
        else:
            lo = hi = as_fraction(v)
        s = 1 << bits
        a = lo.numerator * s
        b = hi.numerator * s
        return cls(a // lo.denominator, -((-b) // hi.denominator), bits)

    def _co(self, v) -> "FixedInterval":
        return v if isinstance(v, FixedInterval) else FixedInterval.of(v, self.bits)

    def __add__(self, other):
        o = self._co(other)
        return FixedInterval(self.lo + o.lo, self.hi + o.hi, self.bits)

    __radd__ = __add__

    def __neg__(self):
        return FixedInterval(-self.hi, -self.lo, self.bits)

    def __sub__(self, other):
        o = self._co(other)
        return FixedInterval(self.lo - o.hi, self.hi - o.lo, self.bits)

    def __rsub__(self, other):
        return self._co(other) - self

    def __mul__(self, other):
        o = self._co(other)
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return FixedInterval(min(ps) >> self.bits, -((-max(ps)) >> self.bits), self.bits)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        r = FixedInterval(1 << self.bits, 1 << self.bits, self.bits)
        for _ in range(n):
            r = r * self
        return r

    def sign(self) -> int:
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        return 0

    def to_interval(self) -> Interval:
        s = 1 << self.bits
        return Interval(Fraction(self.lo, s), Fraction(self.hi, s))
