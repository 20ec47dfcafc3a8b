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
Tests for the singularity models and their Jacobi ring tables.
'''

from fractions import Fraction as Fr

import pytest

from elliptic_gfn.errors import DegenerateRing, UsageError
from elliptic_gfn.exact_algebra import Jet, MultiPoly
from elliptic_gfn.milnor_ring import (build_model, hessian_mult_det,
                                      multiplication_det,
                                      multiplication_table,
                                      quotient_dimension, superpotential)

SAMPLES = [Fr(1, 2), Fr(1), Fr(3, 2)]


def test_e6_model():
    model = build_model("e6t")
    assert model.n == 8
    assert model.basis == ((0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 0),
                           (0, 1, 1), (1, 0, 1), (1, 1, 0), (1, 1, 1))
    assert model.weights == (1, Fr(2, 3), Fr(2, 3), Fr(2, 3), Fr(1, 3),
                             Fr(1, 3), Fr(1, 3), 0)


def test_e7_model():
    model = build_model("E7t")
    assert model.n == 9
    assert model.weights == (1, Fr(3, 4), Fr(3, 4), Fr(1, 2), Fr(1, 2),
                             Fr(1, 2), Fr(1, 4), Fr(1, 4), 0)
    assert model.basis == ((0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0),
                           (0, 3), (1, 2), (0, 4))


def test_e8_model():
    model = build_model("E8")
    assert model.n == 10
    assert model.discriminant == (1, 0, 0, Fr(4, 27))
    assert model.discriminant_at(Fr(-3, 1)) == 1 - 4
    assert model.weights == (1, Fr(5, 6), Fr(2, 3), Fr(2, 3), Fr(1, 2),
                             Fr(1, 2), Fr(1, 3), Fr(1, 3), Fr(1, 6), 0)


def test_unknown_model():
    with pytest.raises(UsageError):
        build_model("E9t")


def test_spectrum_is_antisymmetric(model):
    for mu in range(1, model.n + 1):
        assert model.spectrum[mu - 1] + model.spectrum[model.pair(mu) - 1] == 0


def test_superpotential_slots(e6):
    W = superpotential(e6, {"s": 2, "s7": Jet(0, 1)})
    assert W.coefficient((1, 1, 1)) == Jet(2)
    assert W.coefficient((1, 1, 0)) == Jet(0, 1)
    with pytest.raises(UsageError):
        superpotential(e6, {"s9": 1})


def test_origin_table_is_monomial(e6):
    table = multiplication_table(e6)
    for c in range(1, 9):
        assert table.coefficient(4, 4, c) == Jet()


@pytest.mark.parametrize("s", SAMPLES)
def test_e6_jet_structure_constants(e6, s):
    u = -s**3 / 27
    slope = -Fr(2, 27) * s**2 / (1 - u)
    table = multiplication_table(e6, {"s": s}, jet="s7",
                                 basis=e6.deformations)
    for p in (5, 6, 8):
        assert table.slope(p, 2, p) == slope
    for p in (1, 2, 3, 4, 7):
        assert table.slope(p, 2, p) == 0
    assert table.trace_vector()[1].slope == -Fr(2, 9) * s**2 / (1 - u)


def test_e6_trace_slope_at_one(e6):
    table = multiplication_table(e6, {"s": 1}, jet="s7")
    assert table.trace_vector()[1].slope == -Fr(2, 9) * Fr(27, 28)


@pytest.mark.parametrize("s", SAMPLES)
def test_tables_are_associative(model, s):
    table = multiplication_table(model, {"s": s})
    assert table.is_commutative()
    assert table.is_unital()
    assert table.is_associative()


def test_jet_table_is_associative(e6):
    table = multiplication_table(e6, {"s": Fr(3, 4)}, jet=5)
    assert table.has_jet
    assert table.is_associative()


@pytest.mark.parametrize("s", SAMPLES)
def test_tables_respect_weights(model, s):
    table = multiplication_table(model, {"s": s})
    deg = [model.wdeg(m) for m in table.basis]
    for a in range(1, model.n + 1):
        for b in range(1, model.n + 1):
            for c in range(1, model.n + 1):
                if table.value(a, b, c):
                    assert deg[a - 1] + deg[b - 1] == deg[c - 1]


def test_quotient_dimension(model):
    assert quotient_dimension(model, {"s": Fr(1, 2)}) == model.n


def test_discriminant_root(e6):
    with pytest.raises(DegenerateRing):
        multiplication_table(e6, {"s": -3})
    with pytest.raises(DegenerateRing):
        quotient_dimension(e6, {"s": -3})


def test_jet_direction_checks(e6):
    with pytest.raises(UsageError):
        multiplication_table(e6, {"s": 1}, jet="s8")
    with pytest.raises(UsageError):
        multiplication_table(e6, {"s": 1, "s6": Jet(0, 1)}, jet="s7")


def test_dependent_basis(e6):
    basis = list(e6.basis)
    basis[-1] = (0, 0, 3)
    basis[-2] = (3, 0, 0)
    with pytest.raises(DegenerateRing):
        multiplication_table(e6, {"s": 1}, basis=basis)


def test_hessian_at_origin_is_nilpotent(e6):
    assert hessian_mult_det(e6) == 0


def test_multiplication_by_one(model):
    one = MultiPoly.constant(model.nvars, 1)
    assert multiplication_det(model, one, {"s": Fr(1, 2)}) == 1


def test_hessian_at_generic_point(e6):
    point = {"s": 1, "s2": Fr(1, 5), "s5": Fr(-2, 7), "s7": Fr(1, 3)}
    assert hessian_mult_det(e6, point) != 0


def test_table_json(e6):
    out = multiplication_table(e6, {"s": 1}, jet="s7").to_json()
    assert out["model"] == "E6t"
    assert len(out["c"]) == 8 and len(out["c"][0][0]) == 8
    assert "c_slope" in out
    assert out["point"][7]["value"] == "1"
