import math
from fractions import Fraction

import pytest

from fibtools.density import (
    IntegerSet,
    counting_function,
    density_profile,
    fib_count_bounds,
    fib_residue_density,
    gelfond_member,
    is_prime,
)
from fibtools.fibcore import fib


def fib_values(limit):
    return {fib(n) for n in range(1, 60) if fib(n) <= limit}


def test_fibonacci_membership_and_count():
    fs = IntegerSet.fibonacci()
    values = fib_values(10_000)
    running = 0
    for n in range(1, 10_001):
        assert (n in fs) == (n in values)
        running += n in values
        if n in (1, 2, 3, 100, 1000, 10_000):
            assert counting_function(fs, n) == running
    assert counting_function(fs, 100) == 10
    assert counting_function(fs, 10**6) == 29


def test_gelfond_count(backend):
    gs = IntegerSet.gelfond()
    running = 0
    for n in range(1, 5000):
        running += gelfond_member(n)
        assert (n in gs) == gelfond_member(n)
        if n % 97 == 0:
            assert counting_function(gs, n) == running
    assert counting_function(gs, 10**6) == 499_999


def test_gelfond_ratio_envelope(backend):
    gs = IntegerSet.gelfond()
    for x in list(range(1, 3000)) + [10**4, 12_345, 10**5, 10**6, 2**20 + 7]:
        r = Fraction(counting_function(gs, x), x)
        assert abs(r - Fraction(1, 2)) <= 1 / math.sqrt(x)


def test_explicit_and_file(tmp_path):
    path = tmp_path / "set.txt"
    path.write_text("1\n4\n\n9\n16\n25\n")
    s = IntegerSet.from_file(path)
    assert 9 in s and 10 not in s
    assert counting_function(s, 10) == 3
    assert counting_function(IntegerSet.explicit([0, 5, 5, 3]), 5) == 2
    path.write_text("1\nx\n")
    with pytest.raises(ValueError, match="not a natural"):
        IntegerSet.from_file(path)


def test_profile_tails():
    prof = density_profile(IntegerSet.fibonacci(), [10**3, 10**4, 10**5, 10**6])
    assert prof.counts == (15, 19, 24, 29)
    assert all(a > b for a, b in zip(prof.ratios, prof.ratios[1:]))
    assert prof.tail_max == prof.ratios
    assert prof.tail_min == (prof.ratios[-1],) * 4
    with pytest.raises(ValueError):
        density_profile(IntegerSet.fibonacci(), [10, 5])


def test_log_bounds():
    report = fib_count_bounds(10**6)
    assert report["count"] == 29
    assert not report["log_bound_holds"]
    assert report["shifted_log_bound_holds"]
    for x in range(1, 20_000, 7):
        assert fib_count_bounds(x)["shifted_log_bound_holds"]


def test_residue_density(backend):
    assert fib_residue_density(2, 3).density == Fraction(3, 4)
    assert fib_residue_density(2, 4).density == Fraction(11, 16)
    assert fib_residue_density(5, 1).density == 1
    assert fib_residue_density(11, 1).density == Fraction(7, 11)


@pytest.mark.parametrize("p, e", [(2, 5), (3, 3), (5, 2), (7, 2), (13, 1)])
def test_residues_over_two_periods(backend, p, e):
    m = p**e
    res = fib_residue_density(p, e)
    seen = {fib(n) % m for n in range(2 * res.period)}
    assert res.count == len(seen)
    assert (fib(res.period) % m, fib(res.period + 1) % m) == (0, 1)


def test_residue_guards():
    with pytest.raises(ValueError):
        fib_residue_density(4, 2)
    with pytest.raises(ValueError):
        fib_residue_density(2, 0)
    with pytest.raises(ValueError, match="cap"):
        fib_residue_density(2, 30)


def test_is_prime():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
