"""Polynomial layer tests.

Algebraic laws are property-based; printed forms and root splittings are
checked against hand-computed expectations (small enough to verify by eye).
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from virlog.errors import DomainError, ParseError, SymbolError
from virlog.polynomial import (
    MultiPoly,
    UniPoly,
    poly_gcd,
    rational_roots,
    squarefree_part,
    sym,
)
from virlog.rational import parse_rational, render_rational

# -- rationals --------------------------------------------------------------


def test_parse_rational_accepts_integers_and_fractions():
    assert parse_rational("7") == 7
    assert parse_rational("-3/4") == Fraction(-3, 4)
    assert parse_rational(" 10/ 4 ") == Fraction(5, 2)


@pytest.mark.parametrize("bad", ["1.5", "1e3", "", "a", "1/0", "--2", "1/ "])
def test_parse_rational_rejects_non_rationals(bad):
    with pytest.raises(ParseError):
        parse_rational(bad)


@given(st.fractions())
def test_rational_roundtrip(q):
    assert parse_rational(render_rational(q)) == q


# -- MultiPoly --------------------------------------------------------------

fractions_s = st.fractions(
    min_value=-10, max_value=10, max_denominator=6
)


@st.composite
def mpolys(draw, vars=("c", "h"), max_terms=4, max_exp=3):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        exps = tuple(draw(st.integers(0, max_exp)) for _ in vars)
        terms[exps] = draw(fractions_s)
    return MultiPoly(vars, terms)


def test_symbol_registry_is_enforced():
    with pytest.raises(SymbolError):
        MultiPoly.symbol("x")
    with pytest.raises(SymbolError):
        MultiPoly(("h", "c"), {})  # wrong order
    with pytest.raises(SymbolError):
        MultiPoly(("c",), {(-1,): Fraction(1)})


@given(mpolys(), mpolys(), mpolys())
def test_ring_laws(a, b, x):
    assert (a + b) * x == a * x + b * x
    assert a * b == b * a
    assert a + b == b + a
    assert (a - b) + b == a
    assert a * (b * x) == (a * b) * x


@given(mpolys())
def test_fraction_interop_reflects(p):
    half = Fraction(1, 2)
    assert half + p == p + half
    assert half * p == p * half
    assert half - p == -(p - half)


@given(mpolys(), mpolys())
def test_divexact_inverts_multiplication(a, b):
    if b.is_zero():
        return
    assert (a * b).divexact(b) == a


def test_divexact_rejects_inexact():
    c, h = sym("c"), sym("h")
    with pytest.raises(DomainError):
        (c * c + 1).divexact(h)


@given(mpolys(), mpolys())
def test_derivative_product_rule(a, b):
    lhs = (a * b).derivative("h")
    rhs = a.derivative("h") * b + a * b.derivative("h")
    assert lhs == rhs


@given(mpolys(), fractions_s, fractions_s)
def test_evaluate_is_homomorphic(p, cv, hv):
    q = p * p + 3 * p - Fraction(1, 2)
    pv = p.evaluate({"c": cv, "h": hv})
    assert q.evaluate({"c": cv, "h": hv}) == pv * pv + 3 * pv - Fraction(1, 2)


def test_subs_partial_keeps_symbols():
    c, h = sym("c"), sym("h")
    p = c * h + h * h
    out = p.subs({"c": Fraction(2)})
    assert out == 2 * h + h * h


def test_render_graded_lex():
    c, h = sym("c"), sym("h")
    p = h * h + c * h + c * c
    assert p.render() == "c^2 + c*h + h^2"
    q = 2 * h * h - h + Fraction(1, 3)
    assert q.render() == "2*h^2 - h + 1/3"
    assert MultiPoly.const(0).render() == "0"
    assert (-h).render() == "-h"


@given(mpolys())
def test_mpoly_json_roundtrip(p):
    assert MultiPoly.from_json(p.to_json()) == p


def test_eq_and_hash_ignore_padding_vars():
    padded = MultiPoly(("c", "h"), {(0, 1): Fraction(1)})
    assert padded == sym("h")
    assert hash(padded) == hash(sym("h"))
    const = MultiPoly(("c",), {(0,): Fraction(5, 2)})
    assert const == Fraction(5, 2)
    assert hash(const) == hash(Fraction(5, 2))


# -- UniPoly ----------------------------------------------------------------


@st.composite
def unipolys(draw, var="s", max_deg=5):
    deg = draw(st.integers(-1, max_deg))
    coeffs = [draw(fractions_s) for _ in range(deg + 1)]
    return UniPoly(var, coeffs)


@given(unipolys(), unipolys())
def test_unipoly_divmod(a, b):
    if b.is_zero():
        return
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.is_zero() or r.degree() < b.degree()


@given(unipolys(), fractions_s, fractions_s)
def test_shift_agrees_with_evaluation(p, b, x):
    assert p.shift(b).evaluate(x) == p.evaluate(x + b)


def test_gcd_picks_common_factor():
    x = UniPoly.x("s")
    a = (x - 1) ** 2 * (x + 2)
    b = (x - 1) * (x + 3)
    assert poly_gcd(a, b) == x - 1


def test_squarefree_part_drops_multiplicity():
    x = UniPoly.x("s")
    p = 5 * (x - 1) ** 3 * (x + Fraction(1, 2)) ** 2
    assert squarefree_part(p) == (x - 1) * (x + Fraction(1, 2))


def test_rational_roots_with_residual():
    x = UniPoly.x("s")
    p = 6 * (x - Fraction(1, 2)) ** 2 * (x + 3) * x * (x * x + 1)
    roots, residual = rational_roots(p)
    assert roots == [
        (Fraction(-3), 1),
        (Fraction(0), 1),
        (Fraction(1, 2), 2),
    ]
    assert residual == x * x + 1
    rebuilt = UniPoly.const("s", 6) * residual
    for r, m in roots:
        rebuilt = rebuilt * (x - r) ** m
    assert rebuilt == p


@given(unipolys())
def test_rational_roots_reconstruction(p):
    if p.is_zero():
        return
    roots, residual = rational_roots(p)
    rebuilt = UniPoly.const(p.var, p.leading()) * residual
    x = UniPoly.x(p.var)
    for r, m in roots:
        rebuilt = rebuilt * (x - r) ** m
    assert rebuilt == p
    for r, _ in roots:
        assert residual.evaluate(r) != 0


def test_unipoly_symbolic_coefficients():
    h = sym("h")
    p = UniPoly("s", [h * 2, Fraction(1)])
    assert p.evaluate(Fraction(3)) == 2 * h + 3
    with pytest.raises(DomainError):
        rational_roots(p)


@given(unipolys())
def test_unipoly_json_roundtrip(p):
    assert UniPoly.from_json(p.to_json()) == p
