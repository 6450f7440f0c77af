"""Property suites: ring axioms, calculus rules, family invariants.

Runnable standalone: pytest tests/test_properties.py
"""

from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gramcalc.families import (
    beta_expansion,
    eulerian_grammar,
    family_poly,
    gamma_expansion,
    peak_grammar,
)
from gramcalc.laurent import LaurentPoly, parse_poly
from gramcalc.series import TruncSeries, compare_series, elementary_series

from conftest import laurent_polys, plain_polys, rationals

SETTINGS = settings(max_examples=60, deadline=None)


# -- ring axioms ----------------------------------------------------------------


@SETTINGS
@given(laurent_polys, laurent_polys, laurent_polys)
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h


@SETTINGS
@given(laurent_polys)
def test_additive_group(f):
    assert f + (-f) == LaurentPoly.zero()
    assert f * LaurentPoly.const(1) == f
    assert (f * LaurentPoly.zero(("x", "y"))).is_zero()


# -- substitution is a homomorphism ---------------------------------------------

_images = st.fixed_dictionaries(
    {
        "x": plain_polys,
        "y": plain_polys,
    }
)


@SETTINGS
@given(plain_polys, plain_polys, _images)
def test_substitute_homomorphism(f, g, images):
    assert (f * g).substitute(images) == f.substitute(images) * g.substitute(images)
    assert (f + g).substitute(images) == f.substitute(images) + g.substitute(images)


@SETTINGS
@given(laurent_polys, laurent_polys)
def test_derivative_product_rule(f, g):
    lhs = (f * g).partial_derivative("x")
    rhs = f * g.partial_derivative("x") + f.partial_derivative("x") * g
    assert lhs == rhs


_points = st.fixed_dictionaries(
    {
        "x": st.fractions(min_value=Fraction(1, 4), max_value=Fraction(4), max_denominator=4),
        "y": st.fractions(min_value=Fraction(1, 4), max_value=Fraction(4), max_denominator=4),
    }
)


@SETTINGS
@given(plain_polys, _images, _points)
def test_evaluate_commutes_with_substitute(f, images, point):
    direct = f.substitute(images).evaluate(point)
    via_images = f.evaluate({v: img.evaluate(point) for v, img in images.items()})
    assert direct == via_images


# -- codec round trips -----------------------------------------------------------


@SETTINGS
@given(laurent_polys)
def test_render_parse_roundtrip(f):
    from gramcalc.laurent import parse_poly as parse

    assert parse(f.render()) == f


@SETTINGS
@given(laurent_polys)
def test_json_roundtrip(f):
    assert LaurentPoly.from_json(f.to_json()) == f


@SETTINGS
@given(laurent_polys, laurent_polys)
def test_render_injective(f, g):
    if f != g:
        assert f.render() != g.render() or f.vars != g.vars


# -- grammar calculus -------------------------------------------------------------


@SETTINGS
@given(laurent_polys, laurent_polys, rationals, rationals)
def test_derive_linearity(f, g, a, b):
    grammar = eulerian_grammar()
    assert grammar.derive(a * f + b * g) == a * grammar.derive(f) + b * grammar.derive(g)


@SETTINGS
@given(laurent_polys, laurent_polys)
def test_derive_product_rule(f, g):
    grammar = peak_grammar()
    assert grammar.derive(f * g) == f * grammar.derive(g) + grammar.derive(f) * g


@settings(max_examples=20, deadline=None)
@given(plain_polys, plain_polys, st.integers(min_value=0, max_value=8))
def test_leibniz_random_pairs(f, g, n):
    grammar = eulerian_grammar()
    assert grammar.leibniz_expand(f, g, n) == grammar.derive_n(f * g, n)


@settings(max_examples=20, deadline=None)
@given(plain_polys, plain_polys, st.integers(min_value=0, max_value=8))
def test_gen_multiplicativity(f, g, order):
    grammar = peak_grammar()
    lhs = grammar.gen_coeffs(f * g, order)
    rhs = grammar.gen_coeffs(f, order) * grammar.gen_coeffs(g, order)
    assert compare_series(lhs, rhs) == (True, None)


def test_constant_detection():
    # composite constant of the tangent/secant grammar
    from gramcalc.families import tangent_secant_grammar

    grammar = tangent_secant_grammar()
    composite = parse_poly("1 + x^2") * LaurentPoly.monomial(("a", "x"), (-2, 0))
    assert grammar.derive(composite).is_zero()


# -- family invariants -------------------------------------------------------------


@pytest.mark.parametrize("n", range(1, 11))
def test_homogeneity(n):
    for name in ("eulerian_biv", "left_peak_biv", "interior_peak_biv", "lr_peak_biv"):
        poly = family_poly(name, n)
        assert {sum(exps) for exps in poly.terms} == {n + 1}, name
    # binary-tree polynomials are homogeneous once u counts double
    dumont = family_poly("dumont", n)
    assert {2 * a + b for a, b in dumont.terms} == {n + 1}


@pytest.mark.parametrize("n", range(1, 11))
def test_palindromicity(n):
    table = {}
    for exps, coeff in family_poly("eulerian_uni", n).terms.items():
        table[exps[0]] = coeff
    for k in range(1, n + 1):
        assert table.get(k) == table.get(n + 1 - k)


@pytest.mark.parametrize("n", range(0, 11))
def test_parity(n):
    p = family_poly("deriv_P", n)
    assert all(exps[-1] % 2 == (n + 1) % 2 for exps in p.terms)
    q = family_poly("deriv_Q", n)
    assert all(exps[-1] % 2 == n % 2 for exps in q.terms)


@pytest.mark.parametrize("n", range(1, 11))
def test_sum_rules(n):
    ones = {"x": 1, "y": 1}
    for name in ("eulerian_biv", "left_peak_biv", "interior_peak_biv", "lr_peak_biv"):
        assert family_poly(name, n).evaluate(ones) == factorial(n), name


@pytest.mark.parametrize("n", range(1, 13))
def test_gamma_beta_nonnegative(n):
    assert all(v >= 0 for v in gamma_expansion(n).entries.values())
    assert all(v >= 0 for v in beta_expansion("P", n).entries.values())
    assert all(v >= 0 for v in beta_expansion("Q", n).entries.values())


def test_cross_family_shift():
    for n in range(1, 11):
        assert family_poly("lr_peak_biv", n) == family_poly("interior_peak_biv", n)


# -- series trig identities to order 16 ----------------------------------------------


def test_trig_identities_order_16():
    n = 16
    sin, cos = elementary_series("sin", n), elementary_series("cos", n)
    sinh, cosh = elementary_series("sinh", n), elementary_series("cosh", n)
    sec, tan = elementary_series("sec", n), elementary_series("tan", n)
    one = TruncSeries.constant(1, n)
    assert compare_series(sin * sin + cos * cos, one) == (True, None)
    assert compare_series(cosh * cosh - sinh * sinh, one) == (True, None)
    assert compare_series(sec * cos, one) == (True, None)
    assert compare_series(tan * cos, sin) == (True, None)
