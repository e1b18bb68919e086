import math
from fractions import Fraction

import pytest

from fibtools.fibcore import (
    SQRT5,
    FibConvention,
    binet_sqrt5_fib,
    fib,
    fib_naive,
    fib_residues,
    order_r_fib,
    pisano_period,
    sqrt5_convergents,
    totient,
)


def naive(n, a=0, b=1):
    for _ in range(n):
        a, b = b, a + b
    return a


def test_fib_examples():
    assert fib(0, FibConvention.CLASSIC) == 0
    assert fib(10, FibConvention.CLASSIC) == naive(10) == 55
    assert fib(5, FibConvention.SHIFTED) == naive(5, 1, 1) == 8


def test_fast_doubling_matches_recurrence():
    a, b = 0, 1
    c, d = 1, 1
    for n in range(2001):
        assert fib(n, "classic") == a
        assert fib(n, "shifted") == c
        a, b = b, a + b
        c, d = d, c + d


def test_conventions_related():
    for n in range(300):
        assert fib(n, FibConvention.SHIFTED) == fib(n + 1, FibConvention.CLASSIC)
    assert fib_naive(30, "shifted") == fib(30, "shifted")


def test_binet_exact():
    for n in range(201):
        assert binet_sqrt5_fib(n) == SQRT5 * fib(n)


def test_negative_index_rejected():
    with pytest.raises(ValueError):
        fib(-1)


def naive_rbonacci(r, n):
    seq = [0] * (r - 1) + [1]
    while len(seq) <= n:
        seq.append(sum(seq[-r:]))
    return seq[n]


def test_order_r():
    for n in range(31):
        assert order_r_fib(2, n) == fib(n)
    assert order_r_fib(3, 8) == 24
    assert order_r_fib(4, 8) == 15
    for r in range(2, 7):
        for n in range(40):
            assert order_r_fib(r, n) == naive_rbonacci(r, n)
    with pytest.raises(ValueError):
        order_r_fib(1, 5)


def brute_pisano(m):
    a, b, k = 0, 1 % m, 0
    while True:
        a, b = b, (a + b) % m
        k += 1
        if (a, b) == (0, 1 % m):
            return k


def test_pisano_examples(backend):
    assert pisano_period(1) == 1
    assert pisano_period(2) == 3
    assert pisano_period(8) == 12
    assert pisano_period(10) == 60


def test_pisano_periodicity(backend):
    for m in range(1, 65):
        p = pisano_period(m)
        assert p == brute_pisano(m)
        for n in range(3 * p + 1):
            assert (fib(n + p) % m, fib(n + p + 1) % m) == (fib(n) % m, fib(n + 1) % m)


def test_residues(backend):
    assert fib_residues(2) == {0, 1}
    assert fib_residues(8) == {0, 1, 2, 3, 5, 7}
    assert fib_residues(11) == {0, 1, 2, 3, 5, 8, 10}
    for m in range(1, 80):
        assert fib_residues(m) == {fib(n) % m for n in range(brute_pisano(m))}


def test_totient():
    assert totient(1) == 1
    assert totient(7) == 6
    assert totient(12) == 4
    for n in range(1, 500):
        assert totient(n) == sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def cf_value(count):
    # evaluate [2; 4, ..., 4] with count - 1 fours from the bottom up
    x = Fraction(2) if count == 1 else Fraction(4)
    if count == 1:
        return x
    for _ in range(count - 2):
        x = 4 + 1 / x
    return 2 + 1 / x


def test_convergents():
    assert sqrt5_convergents(1) == [Fraction(2)]
    assert sqrt5_convergents(3) == [Fraction(2), Fraction(9, 4), Fraction(38, 17)]
    assert sqrt5_convergents(4)[-1] == Fraction(161, 72)
    convs = sqrt5_convergents(25)
    for k, c in enumerate(convs):
        assert c == cf_value(k + 1)


def test_convergents_alternate():
    for k, c in enumerate(sqrt5_convergents(40)):
        assert (c - SQRT5).sign() == (-1) ** (k + 1)
