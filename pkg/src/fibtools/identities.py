"""Exact checks of Fibonacci sum identities.

Finite identities are compared exactly. Infinite series are truncated and
given a rigorous rational tail bound from ``F_n >= phi**(n-2)`` (classic
indexing), with ``phi`` replaced by rational enclosures ``PHI_LO < phi < PHI_HI``.
"""
from __future__ import annotations

import enum
import math
from collections.abc import Iterator
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .fibcore import FibConvention, fib_list, sqrt5_convergents
from .quadratic import PHI, SQRT5, QuadraticReal, RealValue, as_real

__all__ = [
    "Verdict",
    "IdentityReport",
    "Interval",
    "PHI_LO",
    "PHI_HI",
    "phi_pow_upper",
    "check_reciprocal_sum",
    "check_symmetry",
    "check_sqrt5_cf",
    "check_df_lemma",
    "sweep",
]

PHI_LO = Fraction(809, 500)  # 1.618
PHI_HI = Fraction(1619, 1000)  # 1.619


class Verdict(enum.Enum):
    EXACT_EQUAL = "ExactEqual"
    WITHIN_TAIL_BOUND = "WithinTailBound"
    REFUTED = "Refuted"


@dataclass(frozen=True)
class Interval:
    lo: RealValue
    hi: RealValue

    def overlaps(self, other: Interval) -> bool:
        return self.lo <= other.hi and other.lo <= self.hi


@dataclass
class IdentityReport:
    identity: str
    params: dict[str, Any]
    convention: FibConvention
    lhs: RealValue | Interval
    rhs: RealValue | Interval
    verdict: Verdict
    witness: dict[str, Any] | None = None
    tail_bound: Fraction | None = None
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def refuted(self) -> bool:
        return self.verdict is Verdict.REFUTED


def phi_pow_upper(e: int) -> Fraction:
    """A rational upper bound for ``phi**e``."""
    return PHI_HI**e if e >= 0 else PHI_LO**e


def round_up(x: Fraction, digits: int = 6) -> Fraction:
    """Smallest number with ``digits`` significant decimals that is ``>= x`` (x > 0)."""
    if x <= 0:
        raise ValueError("x must be positive")
    exp = len(str(x.numerator // x.denominator)) if x >= 1 else -len(str(x.denominator // x.numerator)) + 1
    scale = Fraction(10) ** (digits - exp)
    return Fraction(math.ceil(x * scale)) / scale


def _geometric_tail(first_exponent: int, ratio_exponent: int, scale: Fraction) -> Fraction:
    """Upper bound for ``scale * sum_{j>=0} phi**(first_exponent - ratio_exponent*j)``."""
    return round_up(scale * phi_pow_upper(first_exponent) / (1 - phi_pow_upper(-ratio_exponent)))


def check_reciprocal_sum(k: int, terms: int) -> IdentityReport:
    """``sum_{n>=1} 1/(F_n F_{n+2k}) = (1/F_{2k}) sum_{n=1}^{k} 1/(F_{2n-1} F_{2n})``."""
    if k < 1 or terms < 1:
        raise ValueError("k and terms must be positive")
    f = fib_list(terms + 2 * k + 2)
    partial = sum(Fraction(1, f[n] * f[n + 2 * k]) for n in range(1, terms + 1))
    rhs = Fraction(1, f[2 * k]) * sum(Fraction(1, f[2 * n - 1] * f[2 * n]) for n in range(1, k + 1))
    # terms beyond N are at most phi**(4 - 2n - 2k); bounded from n = N on
    tail = _geometric_tail(4 - 2 * terms - 2 * k, 2, Fraction(1))
    gap = rhs - partial
    ok = 0 <= gap <= tail
    return IdentityReport(
        identity="reciprocal",
        params={"k": k, "terms": terms},
        convention=FibConvention.CLASSIC,
        lhs=Interval(partial, partial + tail),
        rhs=rhs,
        verdict=Verdict.WITHIN_TAIL_BOUND if ok else Verdict.REFUTED,
        witness=None if ok else {"partial": partial, "rhs": rhs, "gap": gap},
        tail_bound=tail,
        details={"partial": partial, "gap": gap},
    )


def _alternating_sum(outer: int, shift: int, f: list[int]) -> Fraction:
    return sum(
        Fraction((-1) ** n * f[outer], f[n] * f[n + outer]) for n in range(1, shift + 1)
    )


def check_symmetry(a: int, b: int) -> IdentityReport:
    """``sum_{n<=b} (-1)^n F_a/(F_n F_{n+a}) = sum_{n<=a} (-1)^n F_b/(F_n F_{n+b})``."""
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive")
    f = fib_list(a + b + 2)
    lhs = _alternating_sum(a, b, f)
    rhs = _alternating_sum(b, a, f)
    equal = lhs == rhs
    return IdentityReport(
        identity="symmetry",
        params={"a": a, "b": b},
        convention=FibConvention.CLASSIC,
        lhs=lhs,
        rhs=rhs,
        verdict=Verdict.EXACT_EQUAL if equal else Verdict.REFUTED,
        witness=None if equal else {"lhs": lhs, "rhs": rhs},
    )


def check_sqrt5_cf(terms: int) -> IdentityReport:
    """Three series for the total error of the convergents ``[2; 4, ..., 4]`` of sqrt 5.

    ``sum_n |sqrt5 - c_n|``, ``2 sum 1/(F_{3n} phi^{3n})`` and
    ``4 sum 1/(F_{6n-3} F_{6n})``; ``c_n`` carries ``n - 1`` fours.
    """
    if terms < 1:
        raise ValueError("terms must be at least 1")
    convergents = sqrt5_convergents(terms + 1)
    f = fib_list(6 * terms + 1)

    cf_sum = QuadraticReal(0)
    for n, c in enumerate(convergents[:terms], start=1):
        cf_sum = cf_sum + (-1) ** (n + 1) * (SQRT5 - c)
    # |sqrt5 - p/q| < 1/(q q') and q' >= 4q, so the tail is below sum 1/(4 q_j^2)
    q_next = convergents[terms].denominator
    cf_tail = round_up(Fraction(1, 4 * q_next * q_next) / (1 - Fraction(1, 16)))

    inv_phi3 = (PHI**3).inverse()
    phi_sum = QuadraticReal(0)
    power = QuadraticReal(1)
    for n in range(1, terms + 1):
        power = power * inv_phi3
        phi_sum = phi_sum + 2 * power / f[3 * n]
    # 2/(F_{3n} phi^{3n}) <= 2 phi^(2 - 6n)
    phi_tail = _geometric_tail(2 - 6 * (terms + 1), 6, Fraction(2))

    pair_sum = sum(Fraction(4, f[6 * n - 3] * f[6 * n]) for n in range(1, terms + 1))
    # 4/(F_{6n-3} F_{6n}) <= 4 phi^(7 - 12n)
    pair_tail = _geometric_tail(7 - 12 * (terms + 1), 12, Fraction(4))

    intervals = {
        "convergent_errors": Interval(as_real(cf_sum), as_real(cf_sum + cf_tail)),
        "phi_series": Interval(as_real(phi_sum), as_real(phi_sum + phi_tail)),
        "fibonacci_pairs": Interval(pair_sum, pair_sum + pair_tail),
    }
    names = list(intervals)
    clash = [
        (x, y)
        for i, x in enumerate(names)
        for y in names[i + 1 :]
        if not intervals[x].overlaps(intervals[y])
    ]
    ok = not clash
    return IdentityReport(
        identity="sqrt5cf",
        params={"terms": terms},
        convention=FibConvention.CLASSIC,
        lhs=intervals["convergent_errors"],
        rhs=intervals["fibonacci_pairs"],
        verdict=Verdict.WITHIN_TAIL_BOUND if ok else Verdict.REFUTED,
        witness=None if ok else {"disjoint": clash, **{k: intervals[k] for k in names}},
        tail_bound=max(cf_tail, phi_tail, pair_tail),
        details={"intervals": intervals, "tails": {"convergent_errors": cf_tail, "phi_series": phi_tail, "fibonacci_pairs": pair_tail}},
    )


def check_df_lemma(k: int, n: int, conv: FibConvention | str = FibConvention.CLASSIC) -> IdentityReport:
    """Even ``k``: ``sum_{i<=n} F_{2ki}``; odd ``k``: ``sum_{i<=n} F_{ki}^2``; against ``F_{kn} F_{k(n+1)} / k!``."""
    if k < 1 or n < 1:
        raise ValueError("k and n must be positive")
    conv = FibConvention.parse(conv)
    f = fib_list(2 * k * n + k + 2, conv)
    if k % 2 == 0:
        lhs = sum(f[2 * k * i] for i in range(1, n + 1))
        form = "sum F_{2ki}"
    else:
        lhs = sum(f[k * i] ** 2 for i in range(1, n + 1))
        form = "sum F_{ki}^2"
    rhs = Fraction(f[k * n] * f[k * (n + 1)], math.factorial(k))
    equal = lhs == rhs
    return IdentityReport(
        identity="dflemma",
        params={"k": k, "n": n},
        convention=conv,
        lhs=Fraction(lhs),
        rhs=rhs,
        verdict=Verdict.EXACT_EQUAL if equal else Verdict.REFUTED,
        witness=None if equal else {"lhs": Fraction(lhs), "rhs": rhs, "form": form},
        details={"form": form},
    )


def sweep() -> Iterator[IdentityReport]:
    """The full acceptance matrix, in a fixed order."""
    for k in range(1, 6):
        yield check_reciprocal_sum(k, 50)
    for a in range(2, 31):
        for b in range(2, a):
            yield check_symmetry(a, b)
    yield check_sqrt5_cf(10)
    for n in range(1, 51):
        yield check_df_lemma(1, n, FibConvention.CLASSIC)
    for conv in FibConvention:
        yield check_df_lemma(2, 2, conv)
