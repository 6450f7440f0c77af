"""Exact multivariate Laurent polynomials over rational / Gaussian-rational scalars.

A polynomial carries an ordered variable table and a sparse map from exponent
vectors (tuples of signed ints, aligned with the table) to nonzero scalars.
Values are immutable; every operation returns a fresh polynomial.  Mixed-table
arithmetic aligns on the union of the two tables (left operand's order first).

Canonical term order — descending total degree, ties broken by descending
lexicographic exponent vector — fixes rendering and JSON byte-for-byte.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple

from .errors import (
    DivisionByZero,
    InsufficientClearing,
    NonInvertibleSubstitution,
    ParseError,
)
from .scalar import (
    GaussianRational,
    Scalar,
    as_scalar,
    parse_scalar,
    render_scalar,
    scalar_from_json,
    scalar_to_json,
)

Exponents = Tuple[int, ...]


def _term_sort_key(exps: Exponents):
    # Descending total degree, then descending lex on the exponent vector.
    return (-sum(exps), tuple(-e for e in exps))


class LaurentPoly:
    """Immutable sparse Laurent polynomial."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables: Iterable[str], terms: Mapping[Exponents, Scalar]):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable in table {variables}")
        clean: Dict[Exponents, Scalar] = {}
        for exps, coeff in terms.items():
            exps = tuple(exps)
            if len(exps) != len(variables):
                raise ValueError(
                    f"exponent vector {exps} does not match table {variables}"
                )
            coeff = as_scalar(coeff)
            if coeff != 0:
                clean[exps] = coeff
        object.__setattr__(self, "vars", variables)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(variables: Iterable[str] = ()) -> "LaurentPoly":
        return LaurentPoly(variables, {})

    @staticmethod
    def const(value, variables: Iterable[str] = ()) -> "LaurentPoly":
        variables = tuple(variables)
        return LaurentPoly(variables, {(0,) * len(variables): as_scalar(value)})

    @staticmethod
    def variable(name: str, variables: Iterable[str] | None = None) -> "LaurentPoly":
        variables = (name,) if variables is None else tuple(variables)
        exps = tuple(1 if v == name else 0 for v in variables)
        if name not in variables:
            raise ValueError(f"{name!r} not in table {variables}")
        return LaurentPoly(variables, {exps: Fraction(1)})

    @staticmethod
    def monomial(
        variables: Iterable[str], exps: Iterable[int], coeff=1
    ) -> "LaurentPoly":
        return LaurentPoly(variables, {tuple(exps): as_scalar(coeff)})

    # -- structure ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(exps) for exps in self.terms)

    def constant_value(self) -> Scalar:
        """The scalar value of a constant polynomial (0 if zero)."""
        if not self.terms:
            return Fraction(0)
        [(exps, coeff)] = self.terms.items()
        if any(exps):
            raise ValueError(f"{self} is not constant")
        return coeff

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def total_degree(self) -> int:
        """Max total degree over terms (0 for the zero polynomial)."""
        if not self.terms:
            return 0
        return max(sum(exps) for exps in self.terms)

    def degree_in(self, var: str) -> int:
        if var not in self.vars or not self.terms:
            return 0
        idx = self.vars.index(var)
        return max(exps[idx] for exps in self.terms)

    def min_degree_in(self, var: str) -> int:
        if var not in self.vars or not self.terms:
            return 0
        idx = self.vars.index(var)
        return min(exps[idx] for exps in self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: _term_sort_key(item[0]))

    def restricted(self, variables: Iterable[str]) -> "LaurentPoly":
        """The same polynomial over a reordered (possibly smaller) table.

        Dropping a variable that actually occurs is an error.
        """
        variables = tuple(variables)
        index = {v: i for i, v in enumerate(variables)}
        out: Dict[Exponents, Scalar] = {}
        for exps, coeff in self.terms.items():
            new = [0] * len(variables)
            for var, e in zip(self.vars, exps):
                if e == 0:
                    continue
                if var not in index:
                    raise ValueError(f"cannot drop live variable {var!r}")
                new[index[var]] = e
            key = tuple(new)
            out[key] = out.get(key, Fraction(0)) + coeff
        return LaurentPoly(variables, out)

    def coefficient(self, exps_by_var: Mapping[str, int]) -> Scalar:
        """Coefficient of the monomial with the given exponents (others zero)."""
        exps = tuple(exps_by_var.get(v, 0) for v in self.vars)
        for var, e in exps_by_var.items():
            if var not in self.vars and e != 0:
                return Fraction(0)
        return self.terms.get(exps, Fraction(0))

    def _signature(self):
        # Table-independent canonical form: per term, the set of (var, exp≠0).
        return frozenset(
            (
                frozenset(
                    (v, e) for v, e in zip(self.vars, exps) if e != 0
                ),
                coeff,
            )
            for exps, coeff in self.terms.items()
        )

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            if self.vars == other.vars:
                return self.terms == other.terms
            return self._signature() == other._signature()
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        return hash(self._signature())

    def __bool__(self):
        return bool(self.terms)

    # -- arithmetic ---------------------------------------------------------

    def _aligned(self, other: "LaurentPoly"):
        if self.vars == other.vars:
            return self.vars, self.terms, other.terms
        merged = list(self.vars) + [v for v in other.vars if v not in self.vars]
        return tuple(merged), _reindex(self, merged), _reindex(other, merged)

    def __add__(self, other):
        other = _coerce(other, self.vars)
        if other is NotImplemented:
            return NotImplemented
        variables, a, b = self._aligned(other)
        out = dict(a)
        for exps, coeff in b.items():
            out[exps] = out.get(exps, Fraction(0)) + coeff
        return LaurentPoly(variables, out)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other, self.vars)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other, self.vars)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __neg__(self):
        return LaurentPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        other = _coerce(other, self.vars)
        if other is NotImplemented:
            return NotImplemented
        variables, a, b = self._aligned(other)
        out: Dict[Exponents, Scalar] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                key = tuple(x + y for x, y in zip(ea, eb))
                prev = out.get(key)
                out[key] = ca * cb if prev is None else prev + ca * cb
        return LaurentPoly(variables, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        # Scalar division only; polynomial division goes through exact_divide.
        if isinstance(other, (int, Fraction, GaussianRational)):
            if other == 0:
                raise DivisionByZero("division by zero scalar")
            inv = Fraction(1) / other if not isinstance(other, GaussianRational) else other.inverse()
            return self * inv
        return NotImplemented

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.monomial_inverse() ** (-exponent)
        result = LaurentPoly.const(1, self.vars)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def monomial_inverse(self) -> "LaurentPoly":
        """Inverse of a single-term polynomial (negated exponents)."""
        if len(self.terms) != 1:
            raise NonInvertibleSubstitution(
                f"{self.render()} is not a monomial, cannot invert"
            )
        [(exps, coeff)] = self.terms.items()
        inv = (
            coeff.inverse()
            if isinstance(coeff, GaussianRational)
            else Fraction(1) / coeff
        )
        return LaurentPoly(self.vars, {tuple(-e for e in exps): inv})

    # -- calculus and substitution ------------------------------------------

    def partial_derivative(self, var: str) -> "LaurentPoly":
        """Formal partial derivative; the power rule covers negative exponents."""
        if var not in self.vars:
            return LaurentPoly.zero(self.vars)
        idx = self.vars.index(var)
        out: Dict[Exponents, Scalar] = {}
        for exps, coeff in self.terms.items():
            e = exps[idx]
            if e == 0:
                continue
            key = exps[:idx] + (e - 1,) + exps[idx + 1 :]
            prev = out.get(key)
            term = coeff * e
            out[key] = term if prev is None else prev + term
        return LaurentPoly(self.vars, out)

    def substitute(self, mapping: Mapping[str, "LaurentPoly"]) -> "LaurentPoly":
        """Ring-homomorphic image under var -> polynomial.

        Unmapped variables map to themselves.  A variable appearing with a
        negative exponent must map to a monomial (single term), otherwise the
        image would leave the Laurent ring.
        """
        images: Dict[str, LaurentPoly] = {}
        for var in self.vars:
            if var in mapping:
                img = mapping[var]
                if not isinstance(img, LaurentPoly):
                    img = LaurentPoly.const(as_scalar(img))
                images[var] = img
            else:
                images[var] = LaurentPoly.variable(var)
        for var in self.vars:
            if self.min_degree_in(var) < 0 and not images[var].is_monomial():
                raise NonInvertibleSubstitution(
                    f"negative exponent on {var!r} but image "
                    f"{images[var].render()} is not a monomial"
                )
        result = LaurentPoly.zero()
        power_cache: Dict[Tuple[str, int], LaurentPoly] = {}
        for exps, coeff in self.terms.items():
            term = LaurentPoly.const(coeff)
            for var, e in zip(self.vars, exps):
                if e == 0:
                    continue
                key = (var, e)
                if key not in power_cache:
                    power_cache[key] = images[var] ** e
                term = term * power_cache[key]
            result = result + term
        return result

    def evaluate(self, point: Mapping[str, Scalar]) -> Scalar:
        """Exact value at a scalar point; every effective variable needs a value."""
        values = {v: as_scalar(c) for v, c in point.items()}
        total: Scalar = Fraction(0)
        for exps, coeff in self.terms.items():
            term: Scalar = coeff
            for var, e in zip(self.vars, exps):
                if e == 0:
                    continue
                if var not in values:
                    raise ValueError(f"no value given for variable {var!r}")
                base = values[var]
                if base == 0:
                    if e < 0:
                        raise DivisionByZero(
                            f"{var} = 0 raised to negative exponent {e}"
                        )
                    term = Fraction(0)
                    break
                term = term * base ** e
            total = total + term
        return total

    # -- exact division -----------------------------------------------------

    def exact_divide(self, divisor: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient self / divisor in the Laurent ring.

        Strips the monomial content of both operands, runs leading-term
        polynomial division in canonical order, and reattaches the monomial
        quotient.  Raises InsufficientClearing when the division is not exact.
        """
        if divisor.is_zero():
            raise DivisionByZero("exact division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly.zero(self.vars)
        variables, a, b = self._aligned(divisor)
        nvars = len(variables)
        shift_a = _content_shift(a, nvars)
        shift_b = _content_shift(b, nvars)
        num = {tuple(e - s for e, s in zip(exps, shift_a)): c for exps, c in a.items()}
        den = {tuple(e - s for e, s in zip(exps, shift_b)): c for exps, c in b.items()}
        lead_den = min(den, key=_term_sort_key)
        lead_den_coeff = den[lead_den]
        quotient: Dict[Exponents, Scalar] = {}
        rem = dict(num)
        while rem:
            lead = min(rem, key=_term_sort_key)
            q_exps = tuple(x - y for x, y in zip(lead, lead_den))
            if any(e < 0 for e in q_exps):
                raise InsufficientClearing(
                    f"{self.render()} is not exactly divisible by {divisor.render()}"
                )
            q_coeff = rem[lead] / lead_den_coeff
            quotient[q_exps] = q_coeff
            for exps, coeff in den.items():
                key = tuple(x + y for x, y in zip(q_exps, exps))
                value = rem.get(key, Fraction(0)) - q_coeff * coeff
                if value == 0:
                    rem.pop(key, None)
                else:
                    rem[key] = value
        shift = tuple(sa - sb for sa, sb in zip(shift_a, shift_b))
        return LaurentPoly(
            variables,
            {tuple(e + s for e, s in zip(exps, shift)): c for exps, c in quotient.items()},
        )

    # -- rendering ----------------------------------------------------------

    def render(self) -> str:
        """Canonical text form, e.g. 'x^2*y + x*y^2' or '3/4*x - 1'."""
        if not self.terms:
            return "0"
        pieces = []
        for exps, coeff in self.sorted_terms():
            factors = []
            for var, e in zip(self.vars, exps):
                if e == 0:
                    continue
                factors.append(var if e == 1 else f"{var}^{e}")
            if isinstance(coeff, GaussianRational):
                sign = "+"
                body = render_scalar(coeff)
                if factors:
                    body += "*" + "*".join(factors)
            else:
                sign = "+" if coeff >= 0 else "-"
                mag = abs(coeff)
                if not factors:
                    body = str(mag)
                elif mag == 1:
                    body = "*".join(factors)
                else:
                    body = f"{mag}*" + "*".join(factors)
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"LaurentPoly({self.render()!r}, vars={self.vars})"

    def __str__(self):
        return self.render()

    # -- JSON ---------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "vars": list(self.vars),
            "terms": [
                {"coeff": scalar_to_json(coeff), "exps": list(exps)}
                for exps, coeff in self.sorted_terms()
            ],
        }

    @staticmethod
    def from_json(payload: Mapping) -> "LaurentPoly":
        variables = tuple(payload["vars"])
        terms: Dict[Exponents, Scalar] = {}
        for item in payload["terms"]:
            exps = tuple(int(e) for e in item["exps"])
            coeff = scalar_from_json(item["coeff"])
            terms[exps] = terms.get(exps, Fraction(0)) + coeff
        return LaurentPoly(variables, terms)


def _reindex(poly: LaurentPoly, variables) -> Dict[Exponents, Scalar]:
    index = {v: i for i, v in enumerate(variables)}
    out: Dict[Exponents, Scalar] = {}
    for exps, coeff in poly.terms.items():
        new = [0] * len(variables)
        for v, e in zip(poly.vars, exps):
            new[index[v]] = e
        out[tuple(new)] = coeff
    return out


def _coerce(value, variables):
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, (int, Fraction, GaussianRational)):
        return LaurentPoly.const(value, variables)
    return NotImplemented


def _content_shift(terms: Mapping[Exponents, Scalar], nvars: int) -> Exponents:
    # Componentwise min exponent: the monomial content of the polynomial.
    mins = [None] * nvars
    for exps in terms:
        for i, e in enumerate(exps):
            if mins[i] is None or e < mins[i]:
                mins[i] = e
    return tuple(m or 0 for m in mins)


class RationalFunction:
    """A numerator/denominator pair; equality by cross-multiplication."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: LaurentPoly, denominator: LaurentPoly):
        if denominator.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "denominator", denominator)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.numerator * other.denominator == other.numerator * self.denominator

    def __hash__(self):
        return hash((self.numerator, self.denominator))

    def __repr__(self):
        return f"({self.numerator.render()}) / ({self.denominator.render()})"


def substitute_rational(
    f: LaurentPoly,
    var: str,
    value: RationalFunction,
    clear_power: int,
    clear: LaurentPoly | None = None,
) -> LaurentPoly:
    """clear^clear_power * f with var -> value, expanded to an exact polynomial.

    `clear` defaults to the value's denominator.  f may not carry negative
    exponents of var.  Raises InsufficientClearing when the chosen clearing
    power leaves a denominator behind.
    """
    if f.min_degree_in(var) < 0:
        raise NonInvertibleSubstitution(
            f"{var!r} occurs with a negative exponent in {f.render()}"
        )
    clear = value.denominator if clear is None else clear
    degree = f.degree_in(var)
    if var not in f.vars:
        degree = 0
    # Numerator of f(value) over denominator^degree, fully expanded.
    num = LaurentPoly.zero()
    idx = f.vars.index(var) if var in f.vars else None
    rest_vars = tuple(v for v in f.vars if v != var)
    by_power: Dict[int, LaurentPoly] = {}
    for exps, coeff in f.terms.items():
        k = exps[idx] if idx is not None else 0
        rest_exps = tuple(e for i, e in enumerate(exps) if i != idx)
        part = LaurentPoly(rest_vars, {rest_exps: coeff})
        by_power[k] = by_power.get(k, LaurentPoly.zero(rest_vars)) + part
    for k, part in by_power.items():
        num = num + part * value.numerator ** k * value.denominator ** (degree - k)
    cleared = clear ** clear_power * num
    return cleared.exact_divide(value.denominator ** degree)


# -- text parsing ------------------------------------------------------------


def parse_poly(text: str, variables: Iterable[str] | None = None) -> LaurentPoly:
    """Parse the canonical text format (inverse of LaurentPoly.render)."""
    parser = _PolyParser(text)
    poly = parser.parse()
    if variables is not None:
        variables = tuple(variables)
        extra = [v for v in poly.vars if v not in variables and poly.degree_in(v) != 0]
        if extra:
            raise ParseError(f"unexpected variables {extra}", 0)
        return LaurentPoly(variables, _reindex(poly, variables))
    return poly


class _PolyParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message):
        raise ParseError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> LaurentPoly:
        self.skip_ws()
        if self.pos == len(self.text):
            self.error("empty polynomial")
        result = LaurentPoly.zero()
        sign = 1
        if self.peek() in "+-":
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
        while True:
            term = self.parse_term()
            result = result + (term if sign == 1 else -term)
            self.skip_ws()
            if self.pos == len(self.text):
                return result
            op = self.peek()
            if op not in "+-":
                self.error(f"expected '+' or '-', found {op!r}")
            sign = 1 if op == "+" else -1
            self.pos += 1

    def parse_term(self) -> LaurentPoly:
        self.skip_ws()
        coeff: Scalar = Fraction(1)
        factors: Dict[str, int] = {}
        saw_factor = False
        while True:
            self.skip_ws()
            ch = self.peek()
            if ch == "(":
                coeff = coeff * self.parse_gaussian()
            elif ch.isdigit():
                coeff = coeff * self.parse_rational()
            elif ch.isalpha() or ch == "_":
                name, exp = self.parse_var_power()
                factors[name] = factors.get(name, 0) + exp
            else:
                self.error(f"expected a factor, found {ch!r}")
            saw_factor = True
            self.skip_ws()
            if self.peek() == "*":
                self.pos += 1
                continue
            break
        if not saw_factor:
            self.error("empty term")
        variables = tuple(factors)
        exps = tuple(factors[v] for v in variables)
        return LaurentPoly(variables, {exps: coeff})

    def parse_rational(self) -> Fraction:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        num = int(self.text[start : self.pos])
        if self.peek() == "/":
            save = self.pos
            self.pos += 1
            if not self.peek().isdigit():
                # Not a fraction after all (e.g. stray slash); rewind.
                self.pos = save
                return Fraction(num)
            dstart = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            den = int(self.text[dstart : self.pos])
            if den == 0:
                self.error("zero denominator")
            return Fraction(num, den)
        return Fraction(num)

    def parse_gaussian(self) -> Scalar:
        start = self.pos
        depth = 0
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
                if depth == 0:
                    self.pos += 1
                    return parse_scalar(self.text[start : self.pos])
            self.pos += 1
        self.error("unbalanced parenthesis")

    def parse_var_power(self):
        start = self.pos
        while self.pos < len(self.text) and (
            self.text[self.pos].isalnum() or self.text[self.pos] == "_"
        ):
            self.pos += 1
        name = self.text[start : self.pos]
        exp = 1
        if self.peek() == "^":
            self.pos += 1
            sign = 1
            if self.peek() == "-":
                sign = -1
                self.pos += 1
            if not self.peek().isdigit():
                self.error("expected exponent digits")
            estart = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            exp = sign * int(self.text[estart : self.pos])
        return name, exp
