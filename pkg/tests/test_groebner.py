from itertools import combinations_with_replacement
from math import comb

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import rank_mod_p
from tropenriques.exact_arith import PrimeField
from tropenriques.groebner import (Ideal, buchberger, cone_dimension, degree_projective, eliminate,
                                   hilbert_function, is_cone_trivial, monomial_ideal_dimension, normal_form,
                                   satisfies_buchberger_criterion)
from tropenriques.polyring import MonomialOrder, Polynomial, PolynomialRing

P = 1009
R = PolynomialRing(["x", "y", "z", "w"], PrimeField(P))
SYMS = sympy.symbols("x y z w")


def monomials(n, d):
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def quadric(coeffs):
    mons = monomials(4, 2)
    return Polynomial(R, {m: c for m, c in zip(mons, coeffs) if c % P})


quadrics = st.lists(st.integers(-3, 3), min_size=10, max_size=10).filter(lambda c: any(c))


def sympy_basis(gens):
    exprs = [sum(int(R.field.to_text(c)) * sympy.prod(s ** k for s, k in zip(SYMS, e)) for e, c in g.terms.items())
             for g in gens]
    gb = sympy.groebner(exprs, *SYMS, order="grevlex", modulus=P)
    out = set()
    for g in gb.exprs:
        poly = sympy.Poly(g, *SYMS, modulus=P)
        lc = int(poly.LC(order="grevlex")) % P
        inv = pow(lc, P - 2, P)
        out.add(frozenset((e, int(c) * inv % P) for e, c in poly.terms() if int(c) % P))
    return out


def ours(gb):
    return {frozenset((e, c % P) for e, c in g.terms.items()) for g in gb.elements}


@settings(max_examples=25, deadline=None)
@given(st.lists(quadrics, min_size=1, max_size=3))
def test_reduced_basis_matches_sympy(coeff_lists):
    gens = [quadric(c) for c in coeff_lists]
    gb = buchberger(Ideal(R, gens))
    assert ours(gb) == sympy_basis(gens)
    assert satisfies_buchberger_criterion(gb)
    for g in gens:
        assert normal_form(g, gb).is_zero()


def macaulay_hilbert(gens, d):
    """dim of degree-d part of k[x]/I by ranking the span of all multiples of the generators."""
    cols = {m: i for i, m in enumerate(monomials(4, d))}
    rows = []
    for g in gens:
        k = d - g.total_degree()
        if k < 0:
            continue
        for m in monomials(4, k):
            row = [0] * len(cols)
            for e, c in g.terms.items():
                row[cols[tuple(a + b for a, b in zip(e, m))]] = c
            rows.append(row)
    return len(cols) - (rank_mod_p(rows, P) if rows else 0)


@settings(max_examples=20, deadline=None)
@given(st.lists(quadrics, min_size=1, max_size=3))
def test_hilbert_function_matches_macaulay_matrix(coeff_lists):
    gens = [quadric(c) for c in coeff_lists]
    gb = buchberger(Ideal(R, gens))
    for d in range(5):
        assert hilbert_function(gb, d) == macaulay_hilbert(gens, d)


def test_twisted_cubic():
    tc = Ideal(R, ["x*z - y^2", "y*w - z^2", "x*w - y*z"])
    gb = buchberger(tc)
    assert cone_dimension(gb) == 2
    assert degree_projective(gb) == 3
    assert not is_cone_trivial(gb)


def test_complete_intersection_degree():
    gb = buchberger(Ideal(R, ["x^2 + y^2 + z^2 + w^2", "x*y - z*w"]))
    assert cone_dimension(gb) == 2
    assert degree_projective(gb) == 4


def test_degree_errors():
    with pytest.raises(ValueError):
        degree_projective(buchberger(Ideal(R, ["1"])))
    with pytest.raises(ValueError):
        degree_projective(buchberger(Ideal(R, ["x", "y", "z", "w"])))


def test_cone_triviality():
    assert is_cone_trivial(buchberger(Ideal(R, ["x^2", "y^3", "z", "w^2 + x*y"])))
    assert is_cone_trivial(buchberger(Ideal(R, ["1"])))
    assert not is_cone_trivial(buchberger(Ideal(R, ["x", "y", "z"])))


def test_monomial_ideal_dimension():
    assert monomial_ideal_dimension([(1, 1, 0, 0)], 4) == 3
    assert monomial_ideal_dimension([(1, 0, 0, 0), (0, 1, 0, 0)], 4) == 2
    assert monomial_ideal_dimension([], 4) == 4


def test_elimination_of_parametrised_conic():
    ring = PolynomialRing(["s", "t", "a", "b", "c"], PrimeField(P))
    graph = Ideal(ring, ["a - s^2", "b - s*t", "c - t^2"])
    kernel = eliminate(graph, ["s", "t"])
    assert kernel.ring.names == ("a", "b", "c")
    expected = Ideal(kernel.ring, ["b^2 - a*c"])
    assert kernel.equals(expected)


def test_lex_basis_triangular():
    ring = PolynomialRing(["x", "y"], PrimeField(P), MonomialOrder.lex())
    gb = buchberger(Ideal(ring, ["x^2 + y^2 - 1", "x - y"]), MonomialOrder.lex())
    assert any(set(g.variables()) == {1} for g in gb.elements)


def test_ideal_membership_and_equality():
    i = Ideal(R, ["x*y", "z"])
    assert i.contains(R.parse("x*y*w + z^3"))
    assert not i.contains(R.parse("x"))
    assert i.equals(Ideal(R, ["z", "x*y + z*w"]))
