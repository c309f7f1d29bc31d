import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from tropenriques.exact_arith import QQ, PrimeField
from tropenriques.polyring import (MonomialOrder, Polynomial, PolynomialRing, RingMap, apply_ring_map,
                                   determinant_poly, jacobian, minors)

R = PolynomialRing(["x", "y", "z"], PrimeField(1009))
X, Y, Z = sympy.symbols("x y z")

terms = st.dictionaries(st.tuples(*[st.integers(0, 3)] * 3), st.integers(-20, 20), max_size=6)


def to_sympy(f: Polynomial):
    return sum(int(f.ring.field.to_text(c)) * X ** e[0] * Y ** e[1] * Z ** e[2] for e, c in f.terms.items())


def same_mod_p(f: Polynomial, expr) -> bool:
    poly = sympy.Poly(sympy.expand(expr), X, Y, Z, modulus=1009)
    theirs = {e: int(c) % 1009 for e, c in poly.terms() if int(c) % 1009}
    return theirs == {e: c % 1009 for e, c in f.terms.items()}


@settings(max_examples=80, deadline=None)
@given(terms, terms)
def test_arithmetic_matches_sympy(a, b):
    f, g = R.from_terms(a), R.from_terms(b)
    assert same_mod_p(f + g, to_sympy(f) + to_sympy(g))
    assert same_mod_p(f - g, to_sympy(f) - to_sympy(g))
    assert same_mod_p(f * g, to_sympy(f) * to_sympy(g))


@settings(max_examples=80, deadline=None)
@given(terms)
def test_print_parse_roundtrip(a):
    f = R.from_terms(a)
    assert R.parse(f.to_text()) == f


def test_parser_handles_powers_and_parentheses():
    assert R.parse("(x+y)^2") == R.parse("x**2 + 2*x*y + y^2")
    assert R.parse("-3*x*z + 1/2") == R.parse("1009*y - 3*x*z + 505")
    with pytest.raises(ValueError):
        R.parse("x + w")
    with pytest.raises(ValueError):
        R.parse("x +* y")


def test_grevlex_and_lex_leading_terms():
    f = R.parse("x*z^2 + y^3")
    assert f.leading_monomial() == (0, 3, 0)
    assert f.leading_monomial(MonomialOrder.lex()) == (1, 0, 2)
    g = R.parse("x*y*z + x^3")
    assert g.leading_monomial() == (3, 0, 0)


def test_rational_field_ring():
    q = PolynomialRing(["a", "b"], QQ)
    f = q.parse("1/2*a + 1/3*b")
    assert (f * 6) == q.parse("3*a + 2*b")


def test_ring_map_and_jacobian():
    src = PolynomialRing(["u", "v"], R.field)
    m = RingMap(src, R, ["x^2", "x*y"])
    assert apply_ring_map(src.parse("u*v - 3"), m) == R.parse("x^3*y - 3")
    jac = jacobian([R.parse("x^2*y"), R.parse("y*z")])
    assert jac[0][0] == R.parse("2*x*y") and jac[1][2] == R.parse("y")
    assert determinant_poly([[R.parse("x"), R.parse("y")], [R.parse("z"), R.parse("1")]]) == R.parse("x - y*z")
    assert len(minors(jac, 2)) == 3
    with pytest.raises(ValueError):
        minors(jac, 3)


def test_ring_map_rejects_wrong_arity():
    src = PolynomialRing(["u", "v"], R.field)
    with pytest.raises(ValueError):
        RingMap(src, R, ["x"])


def test_derivative_in_characteristic_p():
    f = R.parse("x^1009 + x^2")
    assert f.derivative(0) == R.parse("2*x")
