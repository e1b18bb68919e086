"""Finite words, morphic prefixes, k-Fibonacci words and balanced-word counts."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .fibcore import totient

__all__ = [
    "Word",
    "Morphism",
    "BalanceReport",
    "FormulaMismatch",
    "THUE_MORSE",
    "FIBONACCI",
    "morphic_prefix",
    "kfib_word",
    "is_balanced",
    "count_balanced_bruteforce",
    "balanced_formula",
    "balanced_forms",
    "BRUTEFORCE_CAP",
]

BRUTEFORCE_CAP = 20


@dataclass(frozen=True)
class Word:
    letters: tuple[int, ...]
    b: int = 2

    def __post_init__(self):
        if self.b < 1:
            raise ValueError("alphabet size must be positive")
        if any(not 0 <= c < self.b for c in self.letters):
            raise ValueError(f"letters must lie in 0..{self.b - 1}")

    @classmethod
    def from_string(cls, s: str, b: int | None = None) -> Word:
        if s in ("", "ε"):
            return cls((), b or 2)
        if not s.isdigit():
            raise ValueError(f"words are strings of digits, got {s!r}")
        letters = tuple(int(c) for c in s)
        return cls(letters, b if b is not None else max(2, max(letters) + 1))

    def __len__(self) -> int:
        return len(self.letters)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Word(self.letters[i], self.b)
        return self.letters[i]

    def __add__(self, other: Word) -> Word:
        return Word(self.letters + other.letters, max(self.b, other.b))

    def __str__(self) -> str:
        return "".join(str(c) for c in self.letters)


@dataclass(frozen=True)
class Morphism:
    images: dict[int, tuple[int, ...]]
    b: int = 2

    def __post_init__(self):
        for letter, image in self.images.items():
            if not image:
                raise ValueError(f"image of {letter} is empty")
            if any(not 0 <= c < self.b for c in (letter, *image)):
                raise ValueError("morphism leaves the alphabet")

    @classmethod
    def from_strings(cls, rules: dict[str, str]) -> Morphism:
        images = {int(k): tuple(int(c) for c in v) for k, v in rules.items()}
        return cls(images, max(2, 1 + max(max(v) for v in images.values())))

    def prolongable_on(self, start: int) -> bool:
        image = self.images.get(start, ())
        return len(image) >= 2 and image[0] == start


THUE_MORSE = Morphism.from_strings({"0": "01", "1": "10"})
FIBONACCI = Morphism.from_strings({"0": "01", "1": "0"})


def morphic_prefix(m: Morphism, start: int, length: int) -> Word:
    """Length-``length`` prefix of the fixed point of ``m`` beginning with ``start``."""
    if length < 0:
        raise ValueError("length must be non-negative")
    if not m.prolongable_on(start):
        raise ValueError(f"morphism is not prolongable on {start}")
    letters = [start]
    while len(letters) < length:
        out: list[int] = []
        for c in letters:
            out.extend(m.images[c])
            if len(out) >= length:
                break
        letters = out
    return Word(tuple(letters[:length]), m.b)


def kfib_word(k: int, n: int) -> Word:
    """``f_1 = 0``, ``f_2 = 0^(k-1) 1``, ``f_n = f_(n-1)^k f_(n-2)``."""
    if k < 1 or n < 1:
        raise ValueError("k and n must be positive")
    prev, cur = (0,), (0,) * (k - 1) + (1,)
    if n == 1:
        return Word(prev)
    for _ in range(n - 2):
        prev, cur = cur, cur * k + prev
    return Word(cur)


@dataclass(frozen=True)
class BalanceReport:
    word: Word
    balanced: bool
    witness: tuple[Word, Word] | None = None  # heavier factor first


def is_balanced(w: Word | str) -> BalanceReport:
    if isinstance(w, str):
        w = Word.from_string(w, 2)
    if w.b > 2 or any(c > 1 for c in w.letters):
        raise ValueError("balance is defined here for binary words only")
    if len(w) < 2:
        return BalanceReport(w, True)
    m, i, j = kernels.balance_witness(np.fromiter(w.letters, dtype=np.int64, count=len(w)))
    if m < 0:
        return BalanceReport(w, True)
    return BalanceReport(w, False, (w[i : i + m], w[j : j + m]))


def count_balanced_bruteforce(n: int) -> int:
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > BRUTEFORCE_CAP:
        raise ValueError(f"brute force is limited to n <= {BRUTEFORCE_CAP}")
    return kernels.count_balanced(n)


class FormulaMismatch(ArithmeticError):
    """The closed forms of the balanced-word count disagree."""


def balanced_forms(n: int) -> tuple[int, int, int, int]:
    """The four closed forms, reading the inner sum of ``R(k)`` as ``phi(i)`` for i = 1..k+1."""
    if n < 1:
        raise ValueError("n must be at least 1")
    phi = [0] + [totient(i) for i in range(1, n + 2)]
    prefix = [0] * (n + 2)  # prefix[j] = phi(1) + ... + phi(j)
    for i in range(1, n + 2):
        prefix[i] = prefix[i - 1] + phi[i]

    def r(k: int) -> int:
        return prefix[k + 1]

    first = 1 + sum(r(k) for k in range(n))
    second = 1 + sum(sum(phi[i] for i in range(1, k + 2)) for k in range(n))
    third = 1 + sum(sum(phi[i] for i in range(1, k + 1)) for k in range(1, n + 1))
    fourth = 1 + sum((n + 1 - i) * phi[i] for i in range(1, n + 1))
    return first, second, third, fourth


def balanced_formula(n: int) -> int:
    forms = balanced_forms(n)
    if len(set(forms)) != 1:
        raise FormulaMismatch(f"closed forms disagree at n={n}: {forms}")
    # F(n + 1) = F(n) + R(n)
    nxt = balanced_forms(n + 1)[3]
    if nxt != forms[3] + sum(totient(i) for i in range(1, n + 2)):
        raise FormulaMismatch(f"recurrence fails at n={n}")
    return forms[0]
