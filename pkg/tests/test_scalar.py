from fractions import Fraction

import pytest
from hypothesis import given

from gramcalc.errors import DivisionByZero, ParseError
from gramcalc.scalar import (
    I,
    exact_sqrt,
    make_gaussian,
    parse_scalar,
    render_scalar,
    scalar_from_json,
    scalar_to_json,
)

from conftest import scalars


def test_zero_imaginary_collapses_to_fraction():
    value = make_gaussian(Fraction(3, 4), 0)
    assert isinstance(value, Fraction)
    assert value == Fraction(3, 4)
    # arithmetic that lands on the real axis collapses too
    assert I * I == Fraction(-1)
    assert isinstance(I * I, Fraction)
    assert (1 + I) * (1 - I) == 2


def test_gaussian_arithmetic():
    assert (1 + I) ** 2 == 2 * I
    assert (2 + I) * (2 - I) == 5
    assert (1 + I) / (1 - I) == I
    assert I ** 3 == -I
    assert I ** -1 == -I
    assert (make_gaussian(1, 2)).conjugate() == make_gaussian(1, -2)
    assert 1 / make_gaussian(0, 2) == make_gaussian(0, Fraction(-1, 2))


def test_mixed_comparisons():
    assert make_gaussian(2, 1) != 2
    assert make_gaussian(2, 1) - I == 2
    assert hash(make_gaussian(1, 2)) == hash(make_gaussian(1, 2))


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        make_gaussian(1, 1) / 0


def test_render_parse_roundtrip():
    for value in (Fraction(3, 4), Fraction(-2), make_gaussian(1, 2),
                  make_gaussian(Fraction(-1, 2), Fraction(3, 7)), make_gaussian(0, -1)):
        assert parse_scalar(render_scalar(value)) == value


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_scalar("not-a-number")


def test_json_roundtrip():
    for value in (Fraction(5, 3), make_gaussian(1, -2)):
        assert scalar_from_json(scalar_to_json(value)) == value
    assert scalar_to_json(Fraction(2)) == "2"
    assert scalar_to_json(make_gaussian(0, 1)) == {"re": "0", "im": "1"}


def test_exact_sqrt():
    assert exact_sqrt(Fraction(9, 16)) == Fraction(3, 4)
    assert exact_sqrt(Fraction(0)) == 0
    assert exact_sqrt(Fraction(2)) is None
    assert exact_sqrt(Fraction(-4)) is None


@given(scalars, scalars, scalars)
def test_field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(scalars)
def test_inverses(a):
    assert a + (-a) == 0
    if a != 0:
        assert a * (1 / a if isinstance(a, Fraction) else a.inverse()) == 1
