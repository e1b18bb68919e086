import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fibtools.quadratic import PHI, PSI, SQRT5, QuadraticReal, as_real, to_decimal_str

rationals = st.fractions(max_denominator=10**6).filter(lambda f: abs(f) < 10**6)
quads = st.builds(QuadraticReal, rationals, rationals)


def test_phi_psi():
    assert PHI * PSI == -1
    assert PHI + PSI == 1
    assert PHI * PHI == PHI + 1
    assert PHI * (PHI - 1) == 1
    assert SQRT5 * SQRT5 == 5


def test_product_rule():
    x = QuadraticReal(Fraction(1, 3), 2)
    y = QuadraticReal(-4, Fraction(5, 7))
    assert x * y == QuadraticReal(Fraction(-4, 3) + 5 * 2 * Fraction(5, 7), Fraction(5, 21) - 8)


@pytest.mark.parametrize(
    "value, expected",
    [
        (SQRT5, 2),
        (-SQRT5, -3),
        (PHI, 1),
        (PSI, -1),
        (PHI - 1, 0),
        (PHI * (PHI - 1), 1),
        (QuadraticReal(Fraction(7, 2)), 3),
        (QuadraticReal(-Fraction(7, 2)), -4),
        (QuadraticReal(-2, 1), 0),  # sqrt5 - 2 = 0.236
        (QuadraticReal(3, -1), 0),  # 3 - sqrt5 = 0.764
        (QuadraticReal(Fraction(9, 4), -1), 0),  # 9/4 - sqrt5 = 0.0139
        (QuadraticReal(Fraction(-161, 72), 1), -1),  # sqrt5 - 161/72 < 0
    ],
)
def test_floor_cases(value, expected):
    assert math.floor(value) == expected


@settings(max_examples=1000, deadline=None)
@given(quads)
def test_floor_brackets(x):
    f = math.floor(x)
    assert f <= x < f + 1


@settings(max_examples=300, deadline=None)
@given(quads)
def test_sign_matches_float_when_far_from_zero(x):
    approx = float(x.p) + float(x.q) * math.sqrt(5)
    if abs(approx) > 1e-6 * (abs(float(x.p)) + abs(float(x.q)) + 1):
        assert x.sign() == (1 if approx > 0 else -1)


@settings(max_examples=300, deadline=None)
@given(quads, quads)
def test_field_axioms(x, y):
    assert x + y - y == x
    if y:
        assert (x / y) * y == x
    assert (x < y) or (x == y) or (x > y)


def test_mixed_with_fraction():
    assert Fraction(1, 2) + PHI == QuadraticReal(1, Fraction(1, 2))
    assert 1 - PHI == PSI
    assert Fraction(1) / PHI == PHI - 1
    assert Fraction(3, 2) < PHI < 2
    assert as_real(QuadraticReal(Fraction(3, 4))) == Fraction(3, 4)
    assert isinstance(as_real(QuadraticReal(Fraction(3, 4))), Fraction)


def test_powers():
    assert PHI**0 == 1
    assert PHI**-1 == PHI - 1
    assert PHI**10 * PHI**-10 == 1


def test_decimal_rendering():
    assert to_decimal_str(SQRT5, 10) == "2.2360679775"
    assert to_decimal_str(PHI, 8) == "1.61803399"
    assert to_decimal_str(Fraction(-4, 15), 3) == "-0.267"
