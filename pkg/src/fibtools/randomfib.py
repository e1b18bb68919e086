"""Random Fibonacci sequences ``t_n = +-t_{n-1} +- t_{n-2}`` with ``t_1 = t_2 = 1``.

Three routes to the growth of ``|t_n|``:

* Monte Carlo estimate of ``lim |t_n|**(1/n)`` over seeded walks,
* exact ``E|t_n|`` by dynamic programming over ``(t_{n-1}, t_n)`` pairs,
  cross-checked against full enumeration of the sign tree,
* bisection for the real root of ``x**3 - 2x**2 - 1``; the limit of
  ``E|t_n|**(1/n)`` is that root minus one.
"""
from __future__ import annotations

import math
from collections import defaultdict
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction

import numpy as np

from . import _accel, kernels

__all__ = [
    "SignWalk",
    "LyapunovEstimate",
    "ExpectationTable",
    "RittaudRoot",
    "sign_stream",
    "simulate_walk",
    "estimate_viswanath",
    "expectation_tables",
    "exact_expectation",
    "enumerated_expectation",
    "rittaud_root",
    "rittaud_cubic",
    "DEFAULT_EXACT_CAP",
    "ENUMERATION_CAP",
]

DEFAULT_EXACT_CAP = 24
ENUMERATION_CAP = 16


def sign_stream(seed: int) -> Iterator[tuple[int, int]]:
    """Infinite stream of ``(s1, s2)`` sign pairs from SplitMix64.

    Same bit layout as the walk kernels: ``s1`` multiplies ``t_{k-1}``.
    """
    state = seed & kernels.MASK64
    while True:
        state, bits = kernels.splitmix64(state)
        for r in range(32):
            s = (bits >> (2 * r)) & 3
            yield (-1 if s & 1 else 1, -1 if s & 2 else 1)


@dataclass(frozen=True)
class SignWalk:
    n: int
    values: tuple[int, ...]  # t_1 .. t_n
    seed: int | None
    signs: tuple[tuple[int, int], ...]  # (s1, s2) for k = 3 .. n


def simulate_walk(n: int, seed: int = 0, signs: Sequence[tuple[int, int]] | None = None) -> SignWalk:
    """Exact walk of length ``n``; ``signs`` overrides the seeded stream."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if signs is None:
        stream = sign_stream(seed)
        used = [next(stream) for _ in range(n - 2)]
    else:
        used = [tuple(s) for s in signs]
        if len(used) < n - 2:
            raise ValueError(f"need {n - 2} sign pairs, got {len(used)}")
        used = used[: n - 2]
        seed = None
    values = [1, 1]
    for s1, s2 in used:
        if s1 not in (1, -1) or s2 not in (1, -1):
            raise ValueError("signs must be +1 or -1")
        values.append(s1 * values[-1] + s2 * values[-2])
    return SignWalk(n, tuple(values[:n]), seed, tuple(used))


@dataclass(frozen=True)
class LyapunovEstimate:
    n: int
    trials: int
    master_seed: int
    included: int
    zero_terminal_count: int
    mean_log: float  # mean of log|t_n| / n over walks that do not end at zero
    std_error: float
    estimate: float  # exp(mean_log)
    backend: str

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "trials": self.trials,
            "master_seed": self.master_seed,
            "included": self.included,
            "zero_terminal_count": self.zero_terminal_count,
            "mean_log": self.mean_log,
            "std_error": self.std_error,
            "estimate": self.estimate,
            "backend": self.backend,
        }


def _summarise(n, trials, master_seed, logs, zero, backend) -> LyapunovEstimate:
    kept = [float(v) for v in logs[~zero]]
    if not kept:
        raise ArithmeticError("every walk ended at zero; no estimate possible")
    mean = math.fsum(kept) / len(kept)
    if len(kept) > 1:
        var = math.fsum((v - mean) ** 2 for v in kept) / (len(kept) - 1)
        se = math.sqrt(var / len(kept))
    else:
        se = 0.0
    return LyapunovEstimate(
        n=n,
        trials=trials,
        master_seed=master_seed,
        included=len(kept),
        zero_terminal_count=trials - len(kept),
        mean_log=mean,
        std_error=se,
        estimate=math.exp(mean),
        backend=backend,
    )


def estimate_viswanath(
    n: int,
    trials: int,
    master_seed: int = 0,
    *,
    workers: int | None = None,
    forced_signs: Sequence[tuple[int, int]] | None = None,
) -> LyapunovEstimate:
    """Monte Carlo estimate of ``lim |t_n|**(1/n)``.

    Walks ending at ``t_n = 0`` are left out of the mean and counted. Walk ``w``
    draws its signs from ``walk_seed(master_seed, w)``, so the result does not
    depend on ``workers``.
    """
    if n < 10:
        raise ValueError("n must be at least 10")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if forced_signs is not None:
        walk = simulate_walk(n, signs=forced_signs)
        t_n = walk.values[-1]
        zero = np.full(trials, t_n == 0)
        logs = np.full(trials, 0.0 if t_n == 0 else math.log(abs(t_n)) / n)
        return _summarise(n, trials, master_seed, logs, zero, "exact")
    _accel.set_workers(workers)
    seeds = np.array(
        [kernels.walk_seed(master_seed, w) for w in range(trials)], dtype=np.uint64
    )
    logs, zero = kernels.walk_logs(n, seeds)
    return _summarise(n, trials, master_seed, logs, zero, _accel.backend())


@dataclass
class ExpectationTable:
    """Distribution of ``(t_{k-1}, t_k)`` at level ``k``, as integer weights over ``4**(k-2)``."""

    level: int
    weights: dict[tuple[int, int], int] = field(default_factory=dict)

    @property
    def denominator(self) -> int:
        return 4 ** (self.level - 2)

    def probability(self, pair: tuple[int, int]) -> Fraction:
        return Fraction(self.weights.get(pair, 0), self.denominator)

    def total_probability(self) -> Fraction:
        return Fraction(sum(self.weights.values()), self.denominator)

    def expected_abs(self) -> Fraction:
        return Fraction(sum(abs(b) * w for (_, b), w in self.weights.items()), self.denominator)


def expectation_tables(n: int) -> Iterator[ExpectationTable]:
    """Yield the tables for levels ``2..n``; equal pairs are merged at every level."""
    table = ExpectationTable(2, {(1, 1): 1})
    yield table
    for level in range(3, n + 1):
        nxt: dict[tuple[int, int], int] = defaultdict(int)
        for (a, b), w in table.weights.items():
            nxt[(b, b + a)] += w
            nxt[(b, b - a)] += w
            nxt[(b, -b + a)] += w
            nxt[(b, -b - a)] += w
        table = ExpectationTable(level, dict(nxt))
        yield table


def exact_expectation(n: int, cap: int = DEFAULT_EXACT_CAP) -> Fraction:
    if n < 3:
        raise ValueError("n must be at least 3")
    if n > cap:
        raise ValueError(
            f"n={n} exceeds the cap {cap}; the number of (t_(k-1), t_k) states grows "
            f"by about 1.6x per level, raise cap explicitly if memory allows"
        )
    table = None
    for table in expectation_tables(n):
        pass
    return table.expected_abs()


def enumerated_expectation(n: int) -> Fraction:
    """``E|t_n|`` by walking every one of the ``4**(n-2)`` sign sequences."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if n > ENUMERATION_CAP:
        raise ValueError(f"full enumeration is limited to n <= {ENUMERATION_CAP}")
    return Fraction(kernels.sign_tree_abs_sum(n), 4 ** max(n - 2, 0))


def rittaud_cubic(x):
    return x**3 - 2 * x**2 - 1


@dataclass(frozen=True)
class RittaudRoot:
    root: Fraction
    lo: Fraction
    hi: Fraction
    tolerance: Fraction
    iterations: int

    @property
    def growth_limit(self) -> Fraction:
        """Root minus one, the limit of ``E|t_n|**(1/n)``."""
        return self.root - 1

    def decimal(self, value: Fraction | None = None) -> Decimal:
        value = self.root if value is None else value
        digits = max(12, -int(math.floor(math.log10(self.tolerance))) + 3)
        with localcontext() as ctx:
            ctx.prec = digits + 2
            return Decimal(value.numerator) / Decimal(value.denominator)


def rittaud_root(tolerance: Fraction | str | float = Fraction(1, 10**9)) -> RittaudRoot:
    """Bisection for the real root of ``x**3 - 2x**2 - 1`` on ``[2, 3]``.

    Stops once the midpoint is within ``tolerance`` of the root and the cubic's
    value there is below ``tolerance`` in magnitude.
    """
    tol = Fraction(tolerance)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    lo, hi = Fraction(2), Fraction(3)
    assert rittaud_cubic(lo) < 0 < rittaud_cubic(hi)
    iterations = 0
    while True:
        mid = (lo + hi) / 2
        f_mid = rittaud_cubic(mid)
        if (hi - lo) / 2 <= tol and abs(f_mid) < tol:
            return RittaudRoot(mid, lo, hi, tol, iterations)
        if f_mid < 0:
            lo = mid
        else:
            hi = mid
        iterations += 1
