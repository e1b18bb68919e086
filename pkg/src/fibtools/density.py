"""Counting functions and densities of integer sets.

``#A(x) = |A ∩ [1, x]|``. Supported sets are the Fibonacci values, the Gelfond
set of integers with an even binary digit sum, and explicit lists.
"""
from __future__ import annotations

import bisect
import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import kernels

__all__ = [
    "SetKind",
    "IntegerSet",
    "DensityProfile",
    "ResidueDensity",
    "counting_function",
    "density_profile",
    "gelfond_member",
    "is_prime",
    "fib_residue_density",
    "fib_count_bounds",
    "DEFAULT_MODULUS_CAP",
]

DEFAULT_MODULUS_CAP = 1 << 26
LOG_PHI = math.log((1 + math.sqrt(5)) / 2)


class SetKind(enum.Enum):
    FIBONACCI = "fib"
    GELFOND = "evil"
    EXPLICIT = "explicit"


@dataclass(frozen=True)
class IntegerSet:
    kind: SetKind
    values: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind is SetKind.EXPLICIT:
            if any(b <= a for a, b in zip(self.values, self.values[1:])):
                raise ValueError("explicit values must be strictly increasing")
            if self.values and self.values[0] < 0:
                raise ValueError("explicit values must be natural numbers")

    @classmethod
    def fibonacci(cls) -> IntegerSet:
        return cls(SetKind.FIBONACCI)

    @classmethod
    def gelfond(cls) -> IntegerSet:
        return cls(SetKind.GELFOND)

    @classmethod
    def explicit(cls, values) -> IntegerSet:
        return cls(SetKind.EXPLICIT, tuple(sorted(set(int(v) for v in values))))

    @classmethod
    def from_file(cls, path: str | Path) -> IntegerSet:
        """Newline-delimited decimal naturals; blank lines are skipped."""
        values = []
        for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
            line = line.strip()
            if not line:
                continue
            if not line.isdigit():
                raise ValueError(f"{path}:{lineno}: not a natural number: {line!r}")
            values.append(int(line))
        return cls.explicit(values)

    def __contains__(self, n: int) -> bool:
        if self.kind is SetKind.FIBONACCI:
            # n is Fibonacci iff 5n^2 + 4 or 5n^2 - 4 is a square
            if n < 0:
                return False
            for c in (5 * n * n + 4, 5 * n * n - 4):
                if c >= 0 and math.isqrt(c) ** 2 == c:
                    return True
            return False
        if self.kind is SetKind.GELFOND:
            return n >= 0 and gelfond_member(n)
        i = bisect.bisect_left(self.values, n)
        return i < len(self.values) and self.values[i] == n


def gelfond_member(n: int) -> bool:
    """True iff the binary digit sum of ``n`` is even."""
    if n < 0:
        raise ValueError("n must be a natural number")
    return bin(n).count("1") % 2 == 0


def counting_function(s: IntegerSet, x: int) -> int:
    if x < 1:
        return 0
    if s.kind is SetKind.FIBONACCI:
        count, a, b = 0, 1, 2
        while a <= x:
            count += 1
            a, b = b, a + b
        return count
    if s.kind is SetKind.GELFOND:
        return kernels.even_popcount_upto(x)
    lo = bisect.bisect_left(s.values, 1)
    return bisect.bisect_right(s.values, x) - lo


@dataclass(frozen=True)
class DensityProfile:
    points: tuple[int, ...]
    counts: tuple[int, ...]
    ratios: tuple[Fraction, ...]
    tail_min: tuple[Fraction, ...]  # min of ratios[i:]
    tail_max: tuple[Fraction, ...]  # max of ratios[i:]

    def rows(self):
        return zip(self.points, self.counts, self.ratios, self.tail_min, self.tail_max)


def density_profile(s: IntegerSet, xs) -> DensityProfile:
    xs = tuple(int(x) for x in xs)
    if not xs:
        raise ValueError("need at least one sample point")
    if xs[0] < 1 or any(b <= a for a, b in zip(xs, xs[1:])):
        raise ValueError("sample points must be positive and strictly increasing")
    counts = tuple(counting_function(s, x) for x in xs)
    ratios = tuple(Fraction(c, x) for c, x in zip(counts, xs))
    tail_min, tail_max = [], []
    lo = hi = ratios[-1]
    for r in reversed(ratios):
        lo, hi = min(lo, r), max(hi, r)
        tail_min.append(lo)
        tail_max.append(hi)
    return DensityProfile(xs, counts, ratios, tuple(reversed(tail_min)), tuple(reversed(tail_max)))


def fib_count_bounds(x: int) -> dict:
    """Compare ``#F(x)`` with ``log x / log phi`` and with the shifted bound.

    The bare logarithmic bound fails at ``x = 10**6`` (29 > 28.71); adding
    ``log(sqrt 5) / log phi`` restores it.
    """
    count = counting_function(IntegerSet.fibonacci(), x)
    bare = math.log(x) / LOG_PHI
    shifted = (math.log(x) + 0.5 * math.log(5)) / LOG_PHI
    return {
        "x": x,
        "count": count,
        "log_bound": bare,
        "log_bound_holds": count <= bare,
        "shifted_log_bound": shifted,
        "shifted_log_bound_holds": count <= shifted,
    }


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class ResidueDensity:
    p: int
    exponent: int
    modulus: int
    period: int
    count: int
    density: Fraction


def fib_residue_density(p: int, exponent: int, cap: int = DEFAULT_MODULUS_CAP) -> ResidueDensity:
    """Fraction of residues mod ``p**exponent`` hit by the Fibonacci sequence."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if exponent < 1:
        raise ValueError("exponent must be at least 1")
    m = p**exponent
    if m > cap:
        raise ValueError(f"p**exponent = {m} exceeds the modulus cap {cap}")
    period, mask = kernels.residue_mask(m)
    count = int(mask.sum())
    return ResidueDensity(p, exponent, m, period, count, Fraction(count, m))
