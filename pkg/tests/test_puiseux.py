"""Rational exponent series, valuations, and the leading term projection."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from eltlab import ELTScalar, NEG_INF, PuiseuxSeries, eltrop
from eltlab.core import TOP
from eltlab.errors import ParseError
from eltlab.puiseux import format_series, parse_series

exponents = st.fractions(min_value=-6, max_value=6, max_denominator=4)
coefficients = st.fractions(min_value=-9, max_value=9, max_denominator=3)
series = st.lists(st.tuples(exponents, coefficients), max_size=5).map(PuiseuxSeries)
nonzero_rationals = coefficients.filter(lambda a: a != 0)


# 1. Addition is associative and commutative, subtraction cancels
@given(series, series, series)
def test_addition_laws(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x + y == y + x
    assert (x - x).is_zero


# 2. Multiplication is associative and distributes over addition
@given(series, series, series)
def test_multiplication_laws(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z


# 3. The valuation of a product is the sum of the valuations
@given(series, series)
def test_valuation_of_product(x, y):
    p = x * y
    if x.is_zero or y.is_zero:
        assert p.is_zero
        assert p.valuation is TOP
    else:
        assert p.valuation == x.valuation + y.valuation
        assert p.leading_coefficient == x.leading_coefficient * y.leading_coefficient


# 4. The valuation of a sum is at least the smaller valuation
@given(series, series)
def test_valuation_of_sum(x, y):
    if x.is_zero or y.is_zero or (x + y).is_zero:
        return
    v = (x + y).valuation
    assert v >= min(x.valuation, y.valuation)
    if x.valuation != y.valuation:
        assert v == min(x.valuation, y.valuation)


# 5. The sum of the projections surpasses the projection of the sum
@given(series, series)
def test_projection_of_sum(x, y):
    assert (eltrop(x) + eltrop(y)).surpasses(eltrop(x + y))
    if x.is_zero or y.is_zero or x.valuation != y.valuation:
        assert eltrop(x + y) == eltrop(x) + eltrop(y)


def test_projection_of_cancelling_sum():
    """Leading terms that cancel are the one case where the surpass is strict."""
    x = parse_series("2*t^(-3/2) + 5*t^(1)")
    y = parse_series("-2*t^(-3/2)")
    assert eltrop(x) + eltrop(y) == ELTScalar(Fraction(3, 2), 0)
    assert eltrop(x + y) == ELTScalar(-1, 5)
    assert (eltrop(x) + eltrop(y)).surpasses(eltrop(x + y))
    assert not eltrop(x + y).surpasses(eltrop(x) + eltrop(y))
    assert (eltrop(x) + eltrop(x.scale(Fraction(-1)))).surpasses(NEG_INF)


# 6. The leading term projection is multiplicative
@given(series, series)
def test_projection_of_product(x, y):
    assert eltrop(x * y) == eltrop(x) * eltrop(y)


# 7. Scaling by a nonzero rational multiplies the projection by a layer
@given(series, nonzero_rationals)
def test_projection_of_scaling(x, alpha):
    assert eltrop(x.scale(alpha)) == ELTScalar(0, alpha) * eltrop(x)


def test_projection_examples():
    s = parse_series("2*t^(-3/2) + 5*t^(1)")
    assert s.valuation == Fraction(-3, 2)
    assert s.leading_coefficient == 2
    assert eltrop(s) == ELTScalar(Fraction(3, 2), 2)
    assert eltrop(PuiseuxSeries()) is NEG_INF


def test_terms_merge_and_cancel():
    merged = PuiseuxSeries([(Fraction(1), Fraction(2)), (Fraction(1), Fraction(3))])
    assert merged == parse_series("5*t^(1)")
    assert parse_series("1*t^(2) + -1*t^(2)").is_zero
    assert parse_series("0").is_zero


def test_scaling_by_zero_gives_the_zero_series():
    s = parse_series("2*t^(-3/2) + 5*t^(1)")
    assert s.scale(Fraction(0)).is_zero


@given(series)
def test_text_round_trip(x):
    assert parse_series(format_series(x)) == x


def test_format_examples():
    assert format_series(PuiseuxSeries()) == "0"
    s = parse_series(" 2*t^(-3/2)+5*t^(1) ")
    assert format_series(s) == "2*t^(-3/2) + 5*t^(1)"


@pytest.mark.parametrize(
    "text",
    [
        "",
        "t^(1)",
        "2*t^2",
        "2*t^()",
        "2*t^(1/0)",
        "2/4*t^(1)",
        "2*t^(1) +",
        "2*s^(1)",
    ],
)
def test_parse_rejects_malformed_input(text):
    with pytest.raises(ParseError):
        parse_series(text)
