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
Tests for the closed form and ring route G-functions, the anomalies, the
Virasoro formulas, the Coxeter and folding tables and the symmetries.
'''

import os
from fractions import Fraction as Fr

import mpmath
import pytest

from elliptic_gfn.config import DEFAULT_S_GRID
from elliptic_gfn.errors import MissingData, UsageError
from elliptic_gfn.flat_coords import ds_dt, g_of_s, marginal_map, t_of_s
from elliptic_gfn.g_function import (
    SpectrumData, caustic_datum, caustic_residues, coxeter_g_coefficient,
    coxeter_tau_exponents, dg_dt_closed, dg_dt_ring, dg_dt_ring_symmetric,
    elliptic_metric, eta_g, eta_translation_shift, folding_g, folding_spectrum,
    g_closed, g_closed_at_s, modular_and_inversion_transform, reflect_point,
    ring_prefactor, ring_trace_sum, scaling_anomaly, spectrum_of, tau_minus48,
    virasoro_rhs)
from elliptic_gfn.getzler import a2_prepotential
from elliptic_gfn.milnor_ring import multiplication_table


def close(a, b, exponent):
    return abs(a - b) < mpmath.mpf(10) ** (-exponent)


def test_elliptic_anomalies_vanish(model):
    spectrum = spectrum_of(model)
    assert spectrum.is_antisymmetric()
    assert scaling_anomaly(spectrum) == 0


def test_trivial_spectrum():
    assert scaling_anomaly(SpectrumData.from_weights(["1"], 0)) == 0


@pytest.mark.parametrize("system, gamma, kappa", [
    ("B3^(1,1)", Fr(-1, 48), Fr(-1, 48)),
    ("b2-21", Fr(-1, 24), Fr(-1, 48)),
    ("G2_11", Fr(-1, 24), Fr(-1, 12)),
    ("D4^(1,1)", Fr(0), Fr(0)),
    ("g2-31", Fr(-1, 18), Fr(-1, 12)),
])
def test_foldings(system, gamma, kappa):
    g = folding_g(system)
    assert g.gamma == gamma
    assert g.kappa_coefficient == kappa
    assert scaling_anomaly(folding_spectrum(system)) == gamma


def test_folding_eta_and_lambda():
    assert folding_g("b3-11").eta_coefficient == Fr(-1, 2)
    assert folding_g("d4-11").eta_coefficient == Fr(-1, 2)
    g = folding_g("G2^(3,1)")
    assert g.log_coefficients["lambda_t"] == Fr(5, 24)
    assert g.eta_coefficient == 0
    assert g.to_json()["gamma"] == "-1/18"
    with pytest.raises(UsageError):
        folding_g("F4^(1,1)")


@pytest.mark.parametrize("group, expected", [
    ("A4", []), ("D_5", []), ("E8", []), ("I2(3)", []),
    ("B3", [(4, Fr(-1, 48))]),
    ("F4", [(4, Fr(-1, 48))]),
    ("H3", [(5, Fr(-1, 20))]),
    ("H4", [(5, Fr(-1, 20))]),
    ("I2(7)", [(7, Fr(-5, 42))]),
])
def test_coxeter_coefficients(group, expected):
    assert coxeter_g_coefficient(group) == expected


def test_caustic_table():
    assert caustic_datum("F4").N_values == (4, 3, 3)
    assert caustic_datum("B5").caustic_count == 2
    assert coxeter_tau_exponents("B3") == [(4, Fr(-1, 16)), (3, Fr(-1, 48))]
    assert caustic_residues(3) == (Fr(-1, 48), Fr(1, 48))
    for label in ("X7", "D3", "I2(2)"):
        with pytest.raises(UsageError):
            caustic_datum(label)


def test_closed_form_at_origin(model, prec):
    assert close(g_closed(model, 0, prec), 0, 60)


def test_closed_form_decomposition(e6, prec):
    s = mpmath.mpf(1) / 2
    expected = -(2 * mpmath.log(ds_dt(e6, s, prec)) -
                 mpmath.log(1 + s ** 3 / 27)) / 24
    assert close(g_closed_at_s(e6, s, prec), expected, 50)
    assert close(g_closed(e6, t_of_s(e6, s, prec), prec), expected, 45)


def test_closed_derivative_vanishes_at_origin(e6, prec):
    assert abs(dg_dt_closed(e6, 0, prec=prec)) < 1e-15
    assert abs(dg_dt_ring(e6, 0, prec=prec)) < mpmath.mpf(10) ** -50


@pytest.mark.parametrize("s", ["1/2", "1", "3/2"])
def test_e6_trace_sum(e6, s, prec):
    s = Fr(s)
    u = marginal_map(e6).u_of_s(s)
    u = mpmath.mpf(u.numerator) / u.denominator
    g = g_of_s(e6, s, prec=prec)
    gp = g_of_s(e6, s, derivative_order=1, prec=prec)
    sm = mpmath.mpf(s.numerator) / s.denominator
    expected = 8 * sm ** 2 * (1 - u) * g * gp / 9 - 2 * g ** 2 * sm ** 2 / 9
    assert close(ring_trace_sum(e6, s, prec=prec), expected, 25)


def test_e6_prefactor(e6):
    assert ring_prefactor(e6, (2, 7)) == Fr(1, 48)


def test_two_routes_agree(e6, prec):
    for s in DEFAULT_S_GRID:
        ring = dg_dt_ring(e6, s, prec=prec)
        closed = dg_dt_closed(e6, t_of_s(e6, Fr(s), prec), prec=prec)
        assert close(ring, closed, 10)


def test_symmetric_route(e6, prec):
    s = Fr(3, 4)
    assert close(dg_dt_ring_symmetric(e6, s, prec=prec),
                 dg_dt_ring(e6, s, prec=prec), 25)


def test_ring_route_from_file(e6, data_dir, prec):
    path = os.path.join(data_dir, "e6_linearization.json")
    assert close(dg_dt_ring(e6, Fr(1, 2), path=path, prec=prec),
                 dg_dt_ring(e6, Fr(1, 2), prec=prec), 40)


def test_ring_route_errors(e6):
    with pytest.raises(MissingData):
        dg_dt_ring("e7t", Fr(1, 2))
    with pytest.raises(UsageError):
        dg_dt_ring(e6, Fr(1, 2), pair=(2, 3))
    with pytest.raises(UsageError):
        dg_dt_ring(e6, Fr(1, 2), pair=(1, 8))


def test_virasoro_first_power(model):
    spectrum = spectrum_of(model)
    n = spectrum.n
    zeros = [[[0] * n for _ in range(n)] for _ in range(n)]
    assert virasoro_rhs(1, elliptic_metric(n), zeros, [0] * n, spectrum.mu,
                        spectrum.d_charge) == 0
    assert virasoro_rhs(1, [[1]], [[[0]]], [0], [0], 0) == 0
    quarter = virasoro_rhs(1, [[1]], [[[0]]], [0], [Fr(1, 2)], 0)
    assert quarter == -mpmath.mpf(1) / 16


def test_virasoro_on_a2(prec):
    F = a2_prepotential()
    spectrum = SpectrumData.from_weights(F.weights, F.d_charge)
    for point in ([mpmath.mpf("0.3"), mpmath.mpf("0.8")],
                  [mpmath.mpf("-1.1"), mpmath.mpf("0.4")]):
        c = F.structure_constants(point)
        E = F.euler(point)
        for k in (1, 2):
            assert close(virasoro_rhs(k, F.metric, c, E, spectrum.mu,
                                      spectrum.d_charge, prec), 0, 50)


def test_virasoro_at_e6_origin(e6, prec):
    table = multiplication_table(e6, {"s": Fr(1, 2)}, basis=e6.deformations)
    n = table.n
    slots = range(1, n + 1)
    c = [[[table.value(a, b, nu) for b in slots] for a in slots]
         for nu in slots]
    spectrum = spectrum_of(e6)
    metric = elliptic_metric(n)
    # E vanishes at (0, ..., 0, t)
    assert virasoro_rhs(2, metric, c, [0] * n, spectrum.mu,
                        spectrum.d_charge, prec) == 0
    # along the unit direction c does not change and E = t1 e1, where
    # E o E has no t^n component
    E = [mpmath.mpf("0.7")] + [0] * (n - 1)
    for k in (2, 3):
        assert close(virasoro_rhs(k, metric, c, E, spectrum.mu,
                                  spectrum.d_charge, prec), 0, 50)
    assert spectrum.mu[0] == Fr(-1, 2)


def test_virasoro_errors():
    with pytest.raises(UsageError):
        virasoro_rhs(0, [[1]], [[[0]]], [0], [0], 0)
    with pytest.raises(UsageError):
        virasoro_rhs(2, [[0]], [[[0]]], [0], [0], 0)


def test_inversion(e6, prec):
    point = [mpmath.mpf(x) for x in ("0.3", "0.1", "-0.2", "0.5", "0.7",
                                     "-0.4", "0.25", "2")]
    once = modular_and_inversion_transform(e6, point, prec=prec)
    assert once.shift_coefficient == Fr(-1, 6)
    assert close(once.point[-1], -mpmath.mpf(1) / 2, 60)
    twice = modular_and_inversion_transform(e6, once.point, prec=prec)
    for a, b in zip(twice.point, reflect_point(point)):
        assert close(a, b, 50)
    assert close(once.shift(2), -mpmath.log(2) / 6, 60)


def test_transform_shift_constants():
    assert modular_and_inversion_transform(
        "e7t", [1] * 9).shift_coefficient == Fr(-1, 8)
    assert modular_and_inversion_transform(
        "e8t", [1] * 10).shift_coefficient == Fr(-1, 12)
    shifted = modular_and_inversion_transform("e6t", [0] * 7 + [1],
                                              kind="translation")
    assert shifted.point[-1] == 2
    assert shifted.shift_coefficient == 0


def test_transform_errors(e6):
    with pytest.raises(UsageError):
        modular_and_inversion_transform(e6, [1] * 7 + [0])
    with pytest.raises(UsageError):
        modular_and_inversion_transform(e6, [1] * 5)
    with pytest.raises(UsageError):
        modular_and_inversion_transform(e6, [1] * 8, kind="rotation")


def test_eta_translation(prec):
    for tau in ("2i", "0.3+1.2i"):
        assert close(eta_translation_shift(tau, prec),
                     -1j * mpmath.pi / 24, 50)
    tau = mpmath.mpc("0.1", "1.5")
    assert close(eta_g(tau + 1, prec) - eta_g(tau, prec),
                 -1j * mpmath.pi / 24, 50)


@pytest.mark.parametrize("point", [
    {"s": Fr(1, 2), "s2": Fr(1, 5), "s5": Fr(-2, 7), "s7": Fr(1, 3)},
    {"s": Fr(-3, 4), "s3": Fr(2, 3), "s4": Fr(1, 7), "s6": Fr(-1, 2)},
    {"s": Fr(57, 20), "s3": Fr(1, 4), "s4": Fr(-1, 3), "s6": Fr(2, 5)},
])
def test_tau_minus48_generic(e6, point, prec):
    value = tau_minus48(e6, point, prec)
    assert mpmath.isfinite(value)
    assert value != 0


def test_tau_minus48_near_policy_edge(e6, prec):
    edge = {"s": Fr(57, 20), "s3": Fr(1, 4), "s4": Fr(-1, 3), "s6": Fr(2, 5)}
    u = marginal_map(e6).u_of_s(edge["s"])
    assert Fr(4, 5) < abs(u) <= Fr(9, 10)
    assert mpmath.isfinite(tau_minus48(e6, edge, prec))


def test_tau_minus48_vanishes_at_origin(e6, prec):
    assert tau_minus48(e6, {"s": Fr(1, 2)}, prec) == 0
