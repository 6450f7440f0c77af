from fractions import Fraction

import pytest

from gramcalc.errors import (
    DivisionByZero,
    InsufficientClearing,
    NonInvertibleSubstitution,
    ParseError,
)
from gramcalc.laurent import (
    LaurentPoly,
    RationalFunction,
    parse_poly,
    substitute_rational,
)
from gramcalc.scalar import make_gaussian

X = LaurentPoly.variable("x")
Y = LaurentPoly.variable("y")


def test_binomial_square():
    assert (X + Y) * (X + Y) == parse_poly("x^2 + 2*x*y + y^2")


def test_additive_identity():
    f = parse_poly("3*x^2 - y + 7")
    assert f + LaurentPoly.zero() == f


def test_descent_step():
    # multiplying the two seeds gives the n=2 bivariate descent polynomial
    assert (X * Y) * (X + Y) == parse_poly("x^2*y + x*y^2")


def test_partial_derivative_power_rule():
    assert parse_poly("x^2*y").partial_derivative("x") == parse_poly("2*x*y")
    assert parse_poly("x^-1").partial_derivative("x") == parse_poly("-1*x^-2")


def test_partial_derivative_table_row():
    p5 = parse_poly("16 + 136*x^2 + 240*x^4 + 120*x^6")
    assert p5.partial_derivative("x") == parse_poly("272*x + 960*x^3 + 720*x^5")


def test_substitute_binary_tree_to_descent():
    d2 = parse_poly("2*u*v")
    image = d2.substitute({"u": X * Y, "v": parse_poly("1/2*x + 1/2*y")})
    assert image == parse_poly("x*y^2 + x^2*y")


def test_substitute_identity_map():
    f = parse_poly("x^2*y^-1 + 3")
    assert f.substitute({"x": X, "y": Y}) == f
    assert f.substitute({}) == f


def test_substitute_negative_exponent_needs_monomial():
    with pytest.raises(NonInvertibleSubstitution):
        parse_poly("x^-1").substitute({"x": X + Y})
    # a monomial image is fine
    assert parse_poly("x^-1").substitute({"x": 2 * Y}) == parse_poly("1/2*y^-1")


def test_substitute_rational_clearing():
    value = RationalFunction(parse_poly("4*x"), parse_poly("1 + 2*x + x^2"))
    one_plus_x = parse_poly("1 + x")
    l2 = parse_poly("1 + x")
    assert substitute_rational(l2, "x", value, 2, clear=one_plus_x) == parse_poly(
        "1 + 6*x + x^2"
    )
    m2 = LaurentPoly.const(2, ("x",))
    assert substitute_rational(m2, "x", value, 1, clear=one_plus_x) == parse_poly(
        "2 + 2*x"
    )


def test_substitute_rational_insufficient_clearing():
    value = RationalFunction(parse_poly("4*x"), parse_poly("1 + 2*x + x^2"))
    with pytest.raises(InsufficientClearing):
        substitute_rational(parse_poly("1 + x"), "x", value, 1, clear=parse_poly("1 + x"))


def test_evaluate_gaussian():
    a3 = parse_poly("x + 4*x^2 + x^3")
    assert a3.evaluate({"x": make_gaussian(0, 1)}) == Fraction(-4)


def test_evaluate_all_ones_is_coefficient_sum():
    f = parse_poly("3*x^2*y^-1 - 5*x + 7")
    assert f.evaluate({"x": 1, "y": 1}) == 5


def test_evaluate_p4_at_one():
    p4 = parse_poly("16*x + 40*x^3 + 24*x^5")
    assert p4.evaluate({"x": 1}) == 80


def test_evaluate_zero_negative_exponent():
    with pytest.raises(DivisionByZero):
        parse_poly("x^-1").evaluate({"x": 0})


def test_render_canonical_order():
    assert parse_poly("x*y^2 + x^2*y").render() == "x^2*y + x*y^2"
    assert parse_poly("2 + 8*x^2 + 6*x^4").render() == "6*x^4 + 8*x^2 + 2"
    assert LaurentPoly.zero().render() == "0"


def test_parse_laurent_monomial():
    p = parse_poly("x^-1")
    assert p.min_degree_in("x") == -1
    assert p * X == LaurentPoly.const(1)


def test_json_schema_instance():
    two_uv = parse_poly("2*u*v")
    assert two_uv.to_json() == {
        "vars": ["u", "v"],
        "terms": [{"coeff": "2", "exps": [1, 1]}],
    }
    assert LaurentPoly.from_json(two_uv.to_json()) == two_uv


def test_json_gaussian_coefficient():
    poly = LaurentPoly(("x",), {(1,): make_gaussian(1, -2)})
    payload = poly.to_json()
    assert payload["terms"][0]["coeff"] == {"re": "1", "im": "-2"}
    assert LaurentPoly.from_json(payload) == poly


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse_poly("x + + y")
    assert info.value.position == 4


def test_parse_signs_and_fractions():
    assert parse_poly("-x + 1") == LaurentPoly.const(1) - X
    assert parse_poly("3/4*x - 1/2") == Fraction(3, 4) * X - Fraction(1, 2)
    assert parse_poly("(0+1*i)*x") == LaurentPoly(("x",), {(1,): make_gaussian(0, 1)})


def test_exact_divide():
    product = parse_poly("x^2 - y^2")
    assert product.exact_divide(X - Y) == X + Y
    assert product.exact_divide(X + Y) == X - Y
    with pytest.raises(InsufficientClearing):
        product.exact_divide(X + LaurentPoly.const(1))
    # Laurent content handled
    assert parse_poly("x^-1 + 1").exact_divide(parse_poly("1 + x")) == parse_poly("x^-1")
    with pytest.raises(DivisionByZero):
        X.exact_divide(LaurentPoly.zero())


def test_mixed_table_arithmetic():
    a = LaurentPoly.variable("a")
    assert (X + a).vars == ("x", "a")
    assert X + a == a + X


def test_rational_function_equality():
    half = RationalFunction(X, 2 * X * Y)
    also_half = RationalFunction(LaurentPoly.const(1), 2 * Y)
    assert half == also_half
    with pytest.raises(DivisionByZero):
        RationalFunction(X, LaurentPoly.zero())
