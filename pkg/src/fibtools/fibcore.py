"""Fibonacci numbers, r-bonacci numbers, Pisano periods and sqrt(5) convergents."""
from __future__ import annotations

import enum
from fractions import Fraction

from . import kernels
from .quadratic import PHI, PSI, SQRT5, QuadraticReal

__all__ = [
    "ExactRational",
    "FibConvention",
    "fib",
    "fib_list",
    "fib_naive",
    "order_r_fib",
    "pisano_period",
    "fib_residues",
    "totient",
    "sqrt5_convergents",
    "binet_sqrt5_fib",
    "PHI",
    "PSI",
    "SQRT5",
    "QuadraticReal",
]

ExactRational = Fraction


class FibConvention(enum.Enum):
    """``CLASSIC``: F_0 = 0, F_1 = 1.  ``SHIFTED``: F_0 = F_1 = 1."""

    CLASSIC = "classic"
    SHIFTED = "shifted"

    @classmethod
    def parse(cls, value: str | FibConvention) -> FibConvention:
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())


def _fib_pair(n: int) -> tuple[int, int]:
    """``(F_n, F_{n+1})`` in the classic convention, by fast doubling."""
    if n == 0:
        return 0, 1
    a, b = _fib_pair(n >> 1)
    c = a * (2 * b - a)
    d = a * a + b * b
    return (d, c + d) if n & 1 else (c, d)


def fib(n: int, conv: FibConvention | str = FibConvention.CLASSIC) -> int:
    if n < 0:
        raise ValueError("index must be non-negative")
    conv = FibConvention.parse(conv)
    if conv is FibConvention.SHIFTED:
        n += 1
    return _fib_pair(n)[0]


def fib_naive(n: int, conv: FibConvention | str = FibConvention.CLASSIC) -> int:
    a, b = (0, 1) if FibConvention.parse(conv) is FibConvention.CLASSIC else (1, 1)
    for _ in range(n):
        a, b = b, a + b
    return a


def fib_list(count: int, conv: FibConvention | str = FibConvention.CLASSIC) -> list[int]:
    """``[F_0, ..., F_{count-1}]``."""
    a, b = (0, 1) if FibConvention.parse(conv) is FibConvention.CLASSIC else (1, 1)
    out = []
    for _ in range(count):
        out.append(a)
        a, b = b, a + b
    return out


def binet_sqrt5_fib(n: int) -> QuadraticReal:
    """``phi**n - psi**n``, which equals ``sqrt5 * F_n`` (classic)."""
    return PHI**n - PSI**n


def order_r_fib(r: int, n: int) -> int:
    """Order-``r`` Fibonacci number with seeds ``0, ..., 0, 1`` (``r - 1`` zeros)."""
    if r < 2:
        raise ValueError("order must be at least 2")
    if n < 0:
        raise ValueError("index must be non-negative")
    if n < r - 1:
        return 0
    window = [0] * (r - 1) + [1]
    total = 1
    for _ in range(n - (r - 1)):
        nxt = total
        total += nxt - window[0]
        window = window[1:] + [nxt]
    return window[-1]


def pisano_period(m: int) -> int:
    if m < 1:
        raise ValueError("modulus must be positive")
    if m < 1 << 31:
        return kernels.residue_mask(m)[0]
    a, b, period = 0, 1, 0
    while True:
        a, b = b, (a + b) % m
        period += 1
        if a == 0 and b == 1:
            return period


def fib_residues(m: int) -> frozenset[int]:
    """Residues attained by ``F_n mod m`` over one Pisano period."""
    if m < 1:
        raise ValueError("modulus must be positive")
    _, mask = kernels.residue_mask(m)
    return frozenset(int(r) for r in mask.nonzero()[0])


def totient(n: int) -> int:
    if n < 1:
        raise ValueError("totient is defined for n >= 1")
    result = n
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


def sqrt5_convergents(count: int) -> list[Fraction]:
    """First ``count`` convergents of ``[2; 4, 4, 4, ...]``."""
    if count < 1:
        raise ValueError("count must be at least 1")
    p_prev, q_prev = 1, 0
    p, q = 2, 1
    out = [Fraction(p, q)]
    for _ in range(count - 1):
        p, p_prev = 4 * p + p_prev, p
        q, q_prev = 4 * q + q_prev, q
        out.append(Fraction(p, q))
    return out
