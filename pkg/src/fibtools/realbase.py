"""Digit expansions of reals in a base theta > 1 and over Fibonacci denominators.

Values are ``Fraction`` or :class:`QuadraticReal`; every floor and comparison is
exact, so boundary hits such as ``phi * (phi - 1) == 1`` are classified
correctly.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .fibcore import fib_list
from .quadratic import PHI, QuadraticReal, RealValue, as_real

__all__ = [
    "ThetaExpansion",
    "FibFractionRep",
    "theta_digits",
    "theta_partial_sum",
    "theta_prefix_ok",
    "fib_fraction_digits",
    "fib_fraction_partial",
    "fib_prefix_ok",
    "parse_real",
]


@dataclass(frozen=True)
class ThetaExpansion:
    base: RealValue
    value: RealValue
    digits: tuple[int, ...]
    remainders: tuple[RealValue, ...]  # x_1 .. x_n; x_0 is ``value``


@dataclass(frozen=True)
class FibFractionRep:
    value: RealValue
    integer_part: int
    digits: tuple[int, ...]
    remainders: tuple[RealValue, ...]  # x_1 .. x_n


def theta_digits(alpha, theta, n: int) -> ThetaExpansion:
    """``digit_k = floor(theta * x_{k-1})`` and ``x_k`` the fractional part, ``x_0 = alpha``."""
    alpha, theta = as_real(alpha), as_real(theta)
    if not 0 <= alpha < 1:
        raise ValueError("alpha must lie in [0, 1)")
    if not theta > 1:
        raise ValueError("base must exceed 1")
    digits, remainders = [], []
    x = alpha
    for _ in range(n):
        y = theta * x
        d = math.floor(y)
        x = as_real(y - d)
        digits.append(d)
        remainders.append(x)
    return ThetaExpansion(theta, alpha, tuple(digits), tuple(remainders))


def theta_partial_sum(exp: ThetaExpansion, n: int | None = None) -> RealValue:
    n = len(exp.digits) if n is None else n
    if n > len(exp.digits):
        raise ValueError("not enough digits")
    total = Fraction(0)
    inv = 1 / exp.base
    weight = inv
    for d in exp.digits[:n]:
        if d:
            total = total + d * weight
        weight = weight * inv
    return as_real(total)


def theta_prefix_ok(alpha, theta, partial, n: int) -> bool:
    """``0 <= alpha - A_n < theta**-n``."""
    gap = as_real(alpha) - partial
    return 0 <= gap < as_real(theta) ** -n


def fib_fraction_digits(a, n: int) -> FibFractionRep:
    """Binary digits over ``1/F_k`` (``F_0 = F_1 = 1``) by the ratio recursion."""
    a = as_real(a)
    if a < 0:
        raise ValueError("a must be non-negative")
    a0 = math.floor(a)
    x = as_real(a - a0)
    fibs = fib_list(n + 1, "shifted")
    digits, remainders = [], []
    for k in range(1, n + 1):
        y = Fraction(fibs[k], fibs[k - 1]) * x
        d = math.floor(y)
        x = as_real(y - d)
        digits.append(d)
        remainders.append(x)
    return FibFractionRep(a, a0, tuple(digits), tuple(remainders))


def fib_fraction_partial(rep: FibFractionRep, n: int | None = None) -> RealValue:
    n = len(rep.digits) if n is None else n
    if n > len(rep.digits):
        raise ValueError("not enough digits")
    fibs = fib_list(n + 1, "shifted")
    total = Fraction(rep.integer_part)
    for k, d in enumerate(rep.digits[:n], start=1):
        if d:
            total += Fraction(d, fibs[k])
    return total


def fib_prefix_ok(a, partial, n: int, fn: int) -> bool:
    """``0 <= a - A_n < 1/F_n``; ``fn`` is the shifted ``F_n``."""
    gap = as_real(a) - partial
    return 0 <= gap < Fraction(1, fn)


def parse_real(text: str) -> RealValue:
    """Parse ``3/2``, ``phi - 1``, ``sqrt5``, ``1/2+1/2*sqrt5`` or ``(1+sqrt5)/2``."""
    s = text.strip().lower().replace(" ", "").replace("golden", "phi")
    m = re.fullmatch(r"\((.+)\)/(\d+)", s)
    if m:
        return as_real(parse_real(m.group(1)) / int(m.group(2)))
    terms = re.findall(r"[+-]?[^+-]+", s)
    if not terms or "".join(terms) != s:
        raise ValueError(f"cannot parse {text!r} as an exact real")
    total = QuadraticReal(0)
    try:
        for term in terms:
            for name, unit in (("sqrt5", QuadraticReal(0, 1)), ("phi", PHI)):
                if term.endswith(name):
                    coef = term[: -len(name)].rstrip("*")
                    coef = {"": "1", "+": "1", "-": "-1"}.get(coef, coef)
                    total = total + Fraction(coef) * unit
                    break
            else:
                total = total + Fraction(term)
    except ValueError:
        raise ValueError(f"cannot parse {text!r} as an exact real") from None
    return as_real(total)
