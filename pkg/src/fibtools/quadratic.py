"""Exact arithmetic in the field Q(sqrt 5)."""
from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering
from numbers import Rational

__all__ = ["QuadraticReal", "PHI", "PSI", "SQRT5", "RealValue", "as_real", "to_decimal_str"]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"expected a rational, got {type(x).__name__}")


@total_ordering
class QuadraticReal:
    """The number ``p + q*sqrt(5)`` with rational ``p`` and ``q``.

    Comparisons, ``floor`` and ``sign`` are decided with integer arithmetic only.
    """

    __slots__ = ("_p", "_q")

    def __init__(self, p=0, q=0) -> None:
        self._p = _frac(p)
        self._q = _frac(q)

    @property
    def p(self) -> Fraction:
        return self._p

    @property
    def q(self) -> Fraction:
        return self._q

    @classmethod
    def coerce(cls, x) -> QuadraticReal:
        if isinstance(x, QuadraticReal):
            return x
        return cls(_frac(x), 0)

    def is_rational(self) -> bool:
        return self._q == 0

    def conjugate(self) -> QuadraticReal:
        return QuadraticReal(self._p, -self._q)

    def norm(self) -> Fraction:
        return self._p * self._p - 5 * self._q * self._q

    def __repr__(self) -> str:
        return f"QuadraticReal({self._p}, {self._q})"

    def __str__(self) -> str:
        if self._q == 0:
            return str(self._p)
        mag = abs(self._q)
        root = "sqrt5" if mag == 1 else f"{mag}*sqrt5"
        if self._p == 0:
            return f"-{root}" if self._q < 0 else root
        sign = "-" if self._q < 0 else "+"
        return f"{self._p} {sign} {root}"

    # arithmetic

    def __add__(self, other):
        try:
            o = QuadraticReal.coerce(other)
        except TypeError:
            return NotImplemented
        return QuadraticReal(self._p + o._p, self._q + o._q)

    __radd__ = __add__

    def __neg__(self) -> QuadraticReal:
        return QuadraticReal(-self._p, -self._q)

    def __pos__(self) -> QuadraticReal:
        return self

    def __sub__(self, other):
        try:
            o = QuadraticReal.coerce(other)
        except TypeError:
            return NotImplemented
        return QuadraticReal(self._p - o._p, self._q - o._q)

    def __rsub__(self, other):
        try:
            o = QuadraticReal.coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        try:
            o = QuadraticReal.coerce(other)
        except TypeError:
            return NotImplemented
        return QuadraticReal(
            self._p * o._p + 5 * self._q * o._q,
            self._p * o._q + self._q * o._p,
        )

    __rmul__ = __mul__

    def inverse(self) -> QuadraticReal:
        n = self.norm()
        if n == 0:
            # sqrt 5 is irrational, so the norm vanishes only at zero
            raise ZeroDivisionError("QuadraticReal division by zero")
        return QuadraticReal(self._p / n, -self._q / n)

    def __truediv__(self, other):
        try:
            o = QuadraticReal.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        try:
            o = QuadraticReal.coerce(other)
        except TypeError:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exponent: int) -> QuadraticReal:
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else self.inverse()
        e = abs(exponent)
        result = QuadraticReal(1)
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # ordering

    def sign(self) -> int:
        p, q = self._p, self._q
        sp = (p > 0) - (p < 0)
        sq = (q > 0) - (q < 0)
        if sq == 0:
            return sp
        if sp == 0 or sp == sq:
            return sq
        # opposite signs: the larger of p^2 and 5q^2 wins; they are never equal
        return sp if p * p > 5 * q * q else sq

    def __abs__(self) -> QuadraticReal:
        return -self if self.sign() < 0 else self

    def __bool__(self) -> bool:
        return self._p != 0 or self._q != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, QuadraticReal):
            return self._p == other._p and self._q == other._q
        if isinstance(other, (int, Rational)):
            return self._q == 0 and self._p == other
        return NotImplemented

    def __lt__(self, other) -> bool:
        try:
            o = QuadraticReal.coerce(other)
        except TypeError:
            return NotImplemented
        return (self - o).sign() < 0

    def __hash__(self) -> int:
        if self._q == 0:
            return hash(self._p)
        return hash((self._p, self._q))

    def __floor__(self) -> int:
        # write the value as (P + Q*sqrt5)/D with integers and D > 0
        d = math.lcm(self._p.denominator, self._q.denominator)
        big_p = self._p.numerator * (d // self._p.denominator)
        big_q = self._q.numerator * (d // self._q.denominator)
        if big_q == 0:
            return big_p // d
        r = math.isqrt(5 * big_q * big_q)  # r < |Q|*sqrt5 < r + 1
        if big_q > 0:
            return (big_p + r) // d
        return (big_p - r - 1) // d

    def __ceil__(self) -> int:
        return -math.floor(-self)

    def __float__(self) -> float:
        return float(self._p) + float(self._q) * math.sqrt(5)


RealValue = Fraction | QuadraticReal

SQRT5 = QuadraticReal(0, 1)
PHI = QuadraticReal(Fraction(1, 2), Fraction(1, 2))
PSI = 1 - PHI


def as_real(x) -> RealValue:
    """Normalise ints and rationals to ``Fraction``, keep quadratic values."""
    if isinstance(x, QuadraticReal):
        return x.p if x.is_rational() else x
    return _frac(x)


def to_decimal_str(x, digits: int) -> str:
    """Round an exact value to ``digits`` decimals (ties toward +infinity)."""
    scaled = math.floor(x * 10**digits + Fraction(1, 2))
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10**digits)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"
