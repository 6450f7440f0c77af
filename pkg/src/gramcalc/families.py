"""Named polynomial families, their grammars and seeds, and expansion extractors.

Every family is produced by iterating a grammar derivative on a seed;
univariate variants are exponent-pattern projections of the bivariate ones.
Two table values that standard printings get wrong are corrected here and
recorded in the errata data (see gramcalc.errata): the secant-side value at
n=2 is 1+2x^2 (not 1+x^2), and the second forest derivative is a(v^2+u)
(not a(v^2+vu)); both corrections are confirmed by the recurrence route and
by brute-force enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Tuple

from .errors import (
    NotBetaExpressible,
    NotGammaExpressible,
    UnknownFamily,
    UnknownSequence,
)
from .grammar import Grammar
from .laurent import LaurentPoly
from .scalar import Scalar

# -- the grammars -------------------------------------------------------------


def _poly(text: str, variables) -> LaurentPoly:
    from .laurent import parse_poly

    return parse_poly(text, variables)


def eulerian_grammar() -> Grammar:
    v = ("x", "y")
    return Grammar(v, {"x": _poly("x*y", v), "y": _poly("x*y", v)})


def binary_tree_grammar() -> Grammar:
    v = ("u", "v")
    return Grammar(v, {"u": _poly("2*u*v", v), "v": _poly("u", v)})


def plane_tree_grammar() -> Grammar:
    v = ("u", "v")
    return Grammar(v, {"u": _poly("u*v", v), "v": _poly("u", v)})


def peak_grammar() -> Grammar:
    v = ("x", "y")
    return Grammar(v, {"x": _poly("x*y", v), "y": _poly("x^2", v)})


def tangent_secant_grammar() -> Grammar:
    v = ("a", "x")
    return Grammar(v, {"a": _poly("a*x", v), "x": _poly("1 + x^2", v)})


def forest_grammar() -> Grammar:
    v = ("a", "v", "u")
    return Grammar(
        v, {"a": _poly("a*v", v), "v": _poly("u", v), "u": _poly("2*u*v", v)}
    )


def leaf_split_grammar() -> Grammar:
    """The three-variable form of the peak grammar with z standing for x^2."""
    v = ("x", "y", "z")
    return Grammar(
        v, {"x": _poly("x*y", v), "y": _poly("z", v), "z": _poly("2*y*z", v)}
    )


# -- derivative chains, cached -------------------------------------------------

_CHAINS: Dict[str, Tuple[Grammar, LaurentPoly]] = {}
_CHAIN_CACHE: Dict[str, List[LaurentPoly]] = {}


def _chain(key: str, n: int) -> LaurentPoly:
    if key not in _CHAINS:
        grammar_factory, seed_text = _CHAIN_DEFS[key]
        grammar = grammar_factory()
        _CHAINS[key] = (grammar, _poly(seed_text, grammar.vars))
    grammar, seed = _CHAINS[key]
    cache = _CHAIN_CACHE.setdefault(key, [seed])
    while len(cache) <= n:
        cache.append(grammar.derive(cache[-1]))
    return cache[n]


_CHAIN_DEFS = {
    "eulerian": (eulerian_grammar, "y"),
    "dumont": (binary_tree_grammar, "v"),
    "andre": (plane_tree_grammar, "v"),
    "peak_x": (peak_grammar, "x"),
    "peak_y": (peak_grammar, "y"),
    "peak_xy": (peak_grammar, "x + y"),
    "deriv_x": (tangent_secant_grammar, "x"),
    "deriv_a": (tangent_secant_grammar, "a"),
    "forest_a": (forest_grammar, "a"),
}


# -- family registry ------------------------------------------------------------


@dataclass(frozen=True)
class FamilySpec:
    name: str
    description: str
    chain: str
    build: Callable[[int], LaurentPoly]


def _strip_factor(poly: LaurentPoly, var: str) -> LaurentPoly:
    """Exact quotient by the single variable var (e.g. reading a*Q_n as Q_n)."""
    return poly.exact_divide(LaurentPoly.variable(var))


def _project(poly: LaurentPoly, n: int, exponent_map) -> LaurentPoly:
    """Collapse a bivariate x,y polynomial onto x^k via (x-exp, y-exp) -> k."""
    terms: Dict[Tuple[int, ...], Scalar] = {}
    for exps, coeff in poly.terms.items():
        by_var = dict(zip(poly.vars, exps))
        k = exponent_map(by_var.get("x", 0), by_var.get("y", 0), n)
        terms[(k,)] = terms.get((k,), Fraction(0)) + coeff
    return LaurentPoly(("x",), terms)


def _expect(condition: bool, message: str):
    if not condition:
        raise ValueError(message)


def _left_peak_k(a: int, b: int, n: int) -> int:
    _expect(a % 2 == 1 and b == n - (a - 1), f"not a left-peak pattern: x^{a}y^{b}")
    return (a - 1) // 2


def _interior_peak_k(a: int, b: int, n: int) -> int:
    _expect(
        a % 2 == 0 and a >= 2 and b == n - (a - 2) - 1,
        f"not an interior-peak pattern: x^{a}y^{b}",
    )
    return (a - 2) // 2


def _lr_peak_k(a: int, b: int, n: int) -> int:
    _expect(
        a % 2 == 0 and a >= 0 and b == n - a + 1,
        f"not a left-right-peak pattern: x^{a}y^{b}",
    )
    return a // 2


def _build_registry() -> Dict[str, FamilySpec]:
    one = LaurentPoly.const(1, ("x",))
    x_inverse = LaurentPoly.monomial(("x",), (-1,))

    def eulerian_biv(n):
        return _chain("eulerian", n)

    def eulerian_uni(n):
        return _chain("eulerian", n).substitute({"y": LaurentPoly.const(1)})

    def dumont(n):
        return _chain("dumont", n)

    def andre_biv(n):
        return LaurentPoly.const(1, ("u", "v")) if n == 0 else _chain("andre", n)

    def andre_uni(n):
        return andre_biv(n).substitute({"v": LaurentPoly.const(1)})

    def left_peak_biv(n):
        return _chain("peak_x", n)

    def left_peak_uni(n):
        return _project(_chain("peak_x", n), n, _left_peak_k)

    def interior_peak_biv(n):
        return _chain("peak_y", n)

    def interior_peak_uni(n):
        if n == 0:
            return x_inverse
        return _project(_chain("peak_y", n), n, _interior_peak_k)

    def lr_peak_biv(n):
        return _chain("peak_y", n)

    def lr_peak_uni(n):
        if n == 0:
            return one
        return _project(_chain("peak_y", n), n, _lr_peak_k)

    def r_family(n):
        return _chain("peak_xy", n)

    def deriv_p(n):
        return _chain("deriv_x", n).restricted(("x",))

    def deriv_q(n):
        return _strip_factor(_chain("deriv_a", n), "a").restricted(("x",))

    def planted_forest(n):
        return _strip_factor(_chain("forest_a", n), "a").restricted(("v", "u"))

    specs = [
        FamilySpec("eulerian_biv", "bivariate descent/ascent polynomials", "eulerian", eulerian_biv),
        FamilySpec("eulerian_uni", "descent polynomials at y=1", "eulerian", eulerian_uni),
        FamilySpec("dumont", "increasing-binary-tree polynomials", "dumont", dumont),
        FamilySpec("andre_biv", "0-1-2 increasing-tree polynomials", "andre", andre_biv),
        FamilySpec("andre_uni", "0-1-2 tree polynomials at v=1", "andre", andre_uni),
        FamilySpec("left_peak_biv", "bivariate left-peak polynomials", "peak_x", left_peak_biv),
        FamilySpec("left_peak_uni", "left-peak polynomials", "peak_x", left_peak_uni),
        FamilySpec("interior_peak_biv", "bivariate interior-peak polynomials", "peak_y", interior_peak_biv),
        FamilySpec("interior_peak_uni", "interior-peak polynomials", "peak_y", interior_peak_uni),
        FamilySpec("lr_peak_biv", "bivariate left-right-peak polynomials", "peak_y", lr_peak_biv),
        FamilySpec("lr_peak_uni", "left-right-peak polynomials", "peak_y", lr_peak_uni),
        FamilySpec("R_family", "seed x+y under the peak grammar", "peak_xy", r_family),
        FamilySpec("deriv_P", "tangent derivative polynomials", "deriv_x", deriv_p),
        FamilySpec("deriv_Q", "secant derivative polynomials", "deriv_a", deriv_q),
        FamilySpec("planted_forest", "planted-forest polynomials in u,v", "forest_a", planted_forest),
    ]
    return {spec.name: spec for spec in specs}


REGISTRY: Dict[str, FamilySpec] = _build_registry()
FAMILY_NAMES = tuple(REGISTRY)


def family_poly(name: str, n: int) -> LaurentPoly:
    """The n-th member of a registered family."""
    if name not in REGISTRY:
        raise UnknownFamily(f"unknown family {name!r}; known: {', '.join(FAMILY_NAMES)}")
    if n < 0:
        raise ValueError("family index must be nonnegative")
    return REGISTRY[name].build(n)


SEQUENCE_NAMES = ("euler", "tangent", "secant", "springer", "p_at_one")


def family_number(name: str, n: int) -> int:
    """Integer sequences read off the families by exact evaluation."""
    if n < 0:
        raise ValueError("sequence index must be nonnegative")
    if name == "euler":
        value = family_poly("andre_biv", n).evaluate({"u": 1, "v": 1})
    elif name == "tangent":
        value = family_poly("deriv_P", n).evaluate({"x": 0})
    elif name == "secant":
        value = family_poly("deriv_Q", n).evaluate({"x": 0})
    elif name == "springer":
        value = family_poly("deriv_Q", n).evaluate({"x": 1})
    elif name == "p_at_one":
        value = family_poly("deriv_P", n).evaluate({"x": 1})
    else:
        raise UnknownSequence(
            f"unknown sequence {name!r}; known: {', '.join(SEQUENCE_NAMES)}"
        )
    return _as_int(value, f"{name}({n})")


def _as_int(value: Scalar, what: str) -> int:
    if not isinstance(value, Fraction) or value.denominator != 1:
        raise ValueError(f"{what} is not an integer: {value}")
    return value.numerator


# -- gamma / beta expansions ----------------------------------------------------


@dataclass(frozen=True)
class CoefficientTable:
    family: str
    n: int
    entries: Mapping[int, int]

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "entries": {str(k): v for k, v in sorted(self.entries.items())},
        }


def gamma_from_poly(poly: LaurentPoly, n: int) -> Dict[int, int]:
    """Coefficients in the basis (xy)^k (x+y)^{n+1-2k}, k = 1..floor((n+1)/2).

    Triangular extraction: the x^k y^{n+1-k} monomial of the remainder pins
    the k-th coefficient.  The residual must vanish exactly.
    """
    x = LaurentPoly.variable("x", ("x", "y"))
    y = LaurentPoly.variable("y", ("x", "y"))
    remainder = poly
    entries: Dict[int, int] = {}
    for k in range(1, (n + 1) // 2 + 1):
        coeff = remainder.coefficient({"x": k, "y": n + 1 - k})
        if coeff != 0:
            entries[k] = _expansion_int(coeff, "gamma", NotGammaExpressible)
            basis = (x * y) ** k * (x + y) ** (n + 1 - 2 * k)
            remainder = remainder - basis * coeff
    if not remainder.is_zero():
        raise NotGammaExpressible(
            f"residual {remainder.render()} after extracting {entries}"
        )
    return entries


def gamma_expansion(n: int) -> CoefficientTable:
    if n < 1:
        raise ValueError("gamma expansion defined for n >= 1")
    return CoefficientTable(
        "eulerian_biv", n, gamma_from_poly(family_poly("eulerian_biv", n), n)
    )


def beta_from_poly(which: str, poly: LaurentPoly, n: int) -> Dict[int, int]:
    """Coefficients in the x^j (1+x^2)^m bases of the two derivative families.

    For Q: basis x^{n-2k}(1+x^2)^k, k = 0..floor(n/2) (left-peak numbers).
    For P: basis x^{n-2k-1}(1+x^2)^{k+1}, k = 0..floor((n-1)/2) (interior-peak
    numbers).  Extraction runs from the top k down; the lowest surviving power
    of x pins each coefficient.  The residual must vanish exactly.
    """
    x = LaurentPoly.variable("x")
    one_plus_x2 = LaurentPoly.const(1) + x * x
    if which == "Q":
        ks = range(n // 2, -1, -1)
        low_power = lambda k: n - 2 * k
        basis_power = lambda k: k
    elif which == "P":
        ks = range((n - 1) // 2, -1, -1)
        low_power = lambda k: n - 2 * k - 1
        basis_power = lambda k: k + 1
    else:
        raise ValueError("which must be 'P' or 'Q'")
    remainder = poly
    entries: Dict[int, int] = {}
    for k in ks:
        coeff = remainder.coefficient({"x": low_power(k)})
        if coeff != 0:
            entries[k] = _expansion_int(coeff, "beta", NotBetaExpressible)
            basis = x ** low_power(k) * one_plus_x2 ** basis_power(k)
            remainder = remainder - basis * coeff
    if not remainder.is_zero():
        raise NotBetaExpressible(
            f"residual {remainder.render()} after extracting {entries}"
        )
    return entries


def beta_expansion(which: str, n: int) -> CoefficientTable:
    if n < 1:
        raise ValueError("beta expansion defined for n >= 1")
    family = "deriv_P" if which == "P" else "deriv_Q"
    return CoefficientTable(
        family, n, beta_from_poly(which, family_poly(family, n), n)
    )


def _expansion_int(value: Scalar, what: str, error_type) -> int:
    if not isinstance(value, Fraction) or value.denominator != 1:
        raise error_type(f"{what} coefficient {value} is not an integer")
    return value.numerator


# -- the analytic recurrence route ----------------------------------------------


def recurrence_poly(which: str, n: int) -> LaurentPoly:
    """P_n / Q_n by the derivative recurrences, independent of any grammar.

    P_0 = x, P_{m+1} = (1+x^2) P_m'; Q_0 = 1, Q_{m+1} = (1+x^2) Q_m' + x Q_m.
    The result is asserted equal to the grammar route.
    """
    if which not in ("P", "Q"):
        raise ValueError("which must be 'P' or 'Q'")
    if n < 0:
        raise ValueError("index must be nonnegative")
    x = LaurentPoly.variable("x")
    one_plus_x2 = LaurentPoly.const(1) + x * x
    current = x if which == "P" else LaurentPoly.const(1, ("x",))
    for _ in range(n):
        step = one_plus_x2 * current.partial_derivative("x")
        if which == "Q":
            step = step + x * current
        current = step
    family = "deriv_P" if which == "P" else "deriv_Q"
    assert current == family_poly(family, n), f"recurrence/grammar mismatch at {which}_{n}"
    return current
