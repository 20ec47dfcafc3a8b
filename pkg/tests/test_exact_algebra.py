# The MIT License (MIT)
#
# Copyright (c) 2026, elliptic_gfn developers
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in all
# copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.

'''
Tests for polynomial arithmetic, Groebner bases and normal forms.
'''

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from elliptic_gfn.errors import GroebnerBudgetError, UsageError
from elliptic_gfn.exact_algebra import (Jet, MonomialOrder, MultiPoly, dumps,
                                        groebner_basis, loads, normal_form,
                                        poly_mul)

X, Y, Z = (MultiPoly.variable(3, i) for i in range(3))


def e6_reduced(s, jet=True):
    """Partials of x^3+y^3+z^3 + s xyz (+ eps xy)."""
    eps = Jet.epsilon() if jet else 0
    return [3 * X**2 + s * Y * Z + eps * Y,
            3 * Y**2 + s * X * Z + eps * X,
            3 * Z**2 + s * X * Y]


def test_poly_mul_difference_of_squares():
    x, y = MultiPoly.variable(2, 0), MultiPoly.variable(2, 1)
    assert poly_mul(x + y, x - y) == x**2 - y**2


def test_poly_mul_truncates_eps_squared():
    x, y = MultiPoly.variable(2, 0), MultiPoly.variable(2, 1)
    eps = Jet.epsilon()
    product = poly_mul(1 + eps * y, 1 + eps * x)
    assert product == 1 + eps * (x + y)


def test_poly_mul_direct_expansion():
    product = poly_mul(3 * X**2 + 1 * Y * Z, X)
    assert product == 3 * X**3 + X * Y * Z


def test_poly_mul_arity_mismatch():
    with pytest.raises(UsageError):
        poly_mul(MultiPoly.variable(2, 0), X)


def test_zero_coefficients_are_pruned():
    p = X + Y - X
    assert p.terms == {(0, 1, 0): Jet(1)}
    assert (X - X).is_zero()


def test_monic_monomial_ideal():
    gb = groebner_basis([3 * X**2, 3 * Y**2, 3 * Z**2])
    assert set(gb.polys) == {X**2, Y**2, Z**2}


def test_buchberger_finds_cubic():
    x, y = MultiPoly.variable(2, 0), MultiPoly.variable(2, 1)
    gb = groebner_basis([x**2 + y**2, x * y], MonomialOrder.grevlex())
    assert y**3 in gb.polys
    # y^3 = y (x^2 + y^2) - x (x y)
    assert y * (x**2 + y**2) - x * (x * y) == y**3


def test_budget_exhaustion_reports_partial_basis():
    x, y = MultiPoly.variable(2, 0), MultiPoly.variable(2, 1)
    with pytest.raises(GroebnerBudgetError) as err:
        groebner_basis([x**2 + y**2, x * y], budget=0)
    assert len(err.value.basis_so_far) == 2


def test_generators_must_be_nonzero():
    with pytest.raises(UsageError):
        groebner_basis([X, MultiPoly.zero(3)])


def test_normal_form_plain_list():
    r = normal_form(X**3, [3 * X**2, 3 * Y**2, 3 * Z**2])
    assert r.is_zero()


@pytest.mark.parametrize("s", [Fraction(1), Fraction(1, 2), Fraction(-5, 7)])
def test_normal_form_single_step(s):
    gb = groebner_basis(e6_reduced(s))
    assert gb.jet
    expected = -(s / 3) * Y * Z - Jet(0, Fraction(1, 3)) * Y
    assert normal_form(X**2, gb) == expected


def test_cubes_share_their_value_class():
    # x^3 = y^3 = z^3 = -(s/3) xyz in the unperturbed ring
    gb = groebner_basis(e6_reduced(1))
    forms = [normal_form(cube, gb) for cube in (X**3, Y**3, Z**3)]
    target = normal_form(Fraction(-1, 3) * X * Y * Z, gb).value_part()
    for r in forms:
        assert not r.is_zero()
        assert r.value_part() == target
    assert forms[0].has_jet() and forms[1].has_jet()


def test_jet_quotient_dimension():
    gb = groebner_basis(e6_reduced(1))
    assert len(gb.standard_monomials()) == 16
    gb = groebner_basis(e6_reduced(1, jet=False))
    assert len(gb.standard_monomials()) == 8


def _to_sympy(poly, gens, eps):
    expr = 0
    for m, c in poly.terms.items():
        term = sympy.Rational(c.value.numerator, c.value.denominator) + \
            sympy.Rational(c.slope.numerator, c.slope.denominator) * eps
        for g, e in zip(gens, m):
            term *= g**e
        expr += term
    return sympy.expand(expr)


def test_all_basis_products_match_sympy_reduction():
    x, y, z, e = sympy.symbols('x y z e')
    generators = e6_reduced(1)
    ours = groebner_basis(generators)
    oracle = sympy.groebner(
        [_to_sympy(g, (x, y, z), e) for g in generators] + [e**2],
        x, y, z, e, order='grevlex')
    basis = [(0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 0),
             (0, 1, 1), (1, 0, 1), (1, 1, 0), (1, 1, 1)]
    for a in basis:
        for b in basis:
            product = MultiPoly.monomial(tuple(i + j for i, j in zip(a, b)))
            mine = _to_sympy(normal_form(product, ours), (x, y, z), e)
            _, theirs = oracle.reduce(_to_sympy(product, (x, y, z), e))
            assert sympy.expand(mine - theirs) == 0


def test_bases_agree_across_orders():
    generators = e6_reduced(Fraction(3, 2), jet=False)
    grevlex = groebner_basis(generators, MonomialOrder.grevlex())
    grlex = groebner_basis(generators, MonomialOrder.grlex())
    for g in grevlex:
        assert normal_form(g, grlex).is_zero()
    for g in grlex:
        assert normal_form(g, grevlex).is_zero()


def test_weighted_order_needs_weights():
    with pytest.raises(UsageError):
        MonomialOrder("weighted")
    order = MonomialOrder.weighted([Fraction(1, 6), Fraction(1, 3)])
    assert order.key((0, 1)) > order.key((1, 0))


small_polys = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)),
    st.integers(-5, 5), max_size=5).map(lambda d: MultiPoly(3, d))
monomials = st.tuples(st.integers(0, 2), st.integers(0, 2),
                      st.integers(0, 2)).map(MultiPoly.monomial)

E6_GB = groebner_basis(e6_reduced(1, jet=False))


@settings(max_examples=50, deadline=None)
@given(small_polys, small_polys)
def test_normal_form_is_linear(p, q):
    assert normal_form(p + q, E6_GB) == \
        normal_form(p, E6_GB) + normal_form(q, E6_GB)


@settings(max_examples=100, deadline=None)
@given(small_polys, monomials)
def test_normal_form_is_confluent(p, m):
    assert normal_form(normal_form(p, E6_GB) * m, E6_GB) == \
        normal_form(p * m, E6_GB)


fractions = st.fractions(min_value=-10, max_value=10, max_denominator=20)


@settings(max_examples=100)
@given(fractions, fractions, fractions, fractions)
def test_jet_product_rule(a0, a1, b0, b1):
    a, b = Jet(a0, a1), Jet(b0, b1)
    at_one = (a0 + a1) * (b0 + b1)
    at_zero = a0 * b0
    assert (a * b).slope == at_one - at_zero - a1 * b1
    assert (a * b).value == at_zero


def test_jet_division():
    a = Jet(2, 3)
    assert (a / a) == Jet(1)
    with pytest.raises(ZeroDivisionError):
        a / Jet.epsilon()


def test_json_terms():
    p = 3 * X**2 + Jet(Fraction(1, 2), Fraction(-2, 3)) * Y * Z
    text = dumps(p)
    assert '"slope_num": "-2"' in text
    assert loads(text) == p


def test_derivative_and_evaluation():
    p = X**2 * Y + 2 * Z
    assert p.diff(0) == 2 * X * Y
    assert p.evaluate((Fraction(1, 2), 3, 1)) == Fraction(11, 4)
