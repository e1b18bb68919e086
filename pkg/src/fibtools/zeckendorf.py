"""Zeckendorf representations over the shifted weights 1, 2, 3, 5, 8, ...

Coefficient ``s`` (``s >= 1``) weighs ``F_s`` with ``F_0 = F_1 = 1``. Index 0 is
never used: it would duplicate the weight 1 and break uniqueness.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .fibcore import fib


@dataclass(frozen=True)
class ZeckendorfRep:
    """``coefficients[s - 1]`` is the coefficient of ``F_s``."""

    coefficients: tuple[int, ...]
    value: int

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(s for s, c in enumerate(self.coefficients, start=1) if c)

    def __str__(self) -> str:
        return "".join(str(c) for c in reversed(self.coefficients))

    @classmethod
    def from_indices(cls, indices) -> ZeckendorfRep:
        indices = sorted(set(indices))
        if not indices or indices[0] < 1:
            raise ValueError("indices must be positive and non-empty")
        coefficients = [0] * indices[-1]
        for s in indices:
            coefficients[s - 1] = 1
        return cls(tuple(coefficients), sum(fib(s, "shifted") for s in indices))


def validate(coefficients) -> None:
    coefficients = tuple(coefficients)
    if not coefficients or coefficients[-1] != 1:
        raise ValueError("leading coefficient must be 1")
    if any(c not in (0, 1) for c in coefficients):
        raise ValueError("coefficients must be 0 or 1")
    for s in range(len(coefficients) - 1):
        if coefficients[s] and coefficients[s + 1]:
            raise ValueError(f"adjacent ones at indices {s + 1} and {s + 2}")


def encode(a: int) -> ZeckendorfRep:
    """Greedy decomposition: take the largest ``F_n <= a`` and recurse on the rest."""
    if a < 1:
        raise ValueError("only positive integers have a Zeckendorf representation")
    weights = [1, 2]
    while weights[-1] <= a:
        weights.append(weights[-1] + weights[-2])
    while weights[-1] > a:
        weights.pop()
    coefficients = [0] * len(weights)
    remainder = a
    for s in range(len(weights) - 1, -1, -1):
        if weights[s] <= remainder:
            coefficients[s] = 1
            remainder -= weights[s]
    return ZeckendorfRep(tuple(coefficients), a)


def decode(rep: ZeckendorfRep | tuple[int, ...] | list[int]) -> int:
    coefficients = rep.coefficients if isinstance(rep, ZeckendorfRep) else tuple(rep)
    validate(coefficients)
    total = 0
    a, b = 1, 2
    for c in coefficients:
        if c:
            total += a
        a, b = b, a + b
    return total


def uniqueness_oracle(a: int, max_index: int | None = None) -> int:
    """Count every non-adjacent 0/1 vector over ``F_1..F_max_index`` summing to ``a``."""
    if a < 1:
        raise ValueError("a must be positive")
    if max_index is None:
        max_index = 1
        while fib(max_index, "shifted") < a:
            max_index += 1
    if fib(max_index, "shifted") < a:
        raise ValueError("max_index too small: F_max_index must be at least a")
    weights = [fib(s, "shifted") for s in range(1, max_index + 1)]
    return kernels.count_nonadjacent(weights, a)
