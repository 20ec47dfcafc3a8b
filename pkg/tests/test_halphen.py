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
Tests for Halphen's system, its theta solution and the D4^(1,1) oracles.
'''

import mpmath
import numpy as np
import pytest

from elliptic_gfn import halphen
from elliptic_gfn.config import D4_CONVENTION, ETA_SUM_MULTIPLE
from elliptic_gfn.errors import (ConventionError, DomainError,
                                 IntegrationError, UsageError)
from elliptic_gfn.g_function import virasoro_rhs
from elliptic_gfn.getzler import (ScaledG, getzler_scan, metric_residual,
                                  wdvv_residual)
from elliptic_gfn.halphen import (HalphenConvention, HalphenState,
                                  closure_derivatives, d4_oracles,
                                  halphen_integrate, halphen_residual,
                                  halphen_rhs, resolve_d4_convention,
                                  theta_candidate)
from elliptic_gfn.special_functions import eta_log_derivative


def close(a, b, exponent):
    return abs(a - b) < mpmath.mpf(10) ** (-exponent)


def test_rhs():
    assert halphen_rhs((2, 3, 5)) == (1, 11, 19)


def test_closure_derivatives(prec):
    state = theta_candidate("2i", prec=prec)
    jets = closure_derivatives(state, 3)
    for a, b in zip(jets[1], halphen_rhs(state.triple)):
        assert close(a, b, 60)
    for order in (2, 3):
        numeric = mpmath.diff(
            lambda t: closure_derivatives(
                theta_candidate(t, prec=mpmath.mp.dps), order - 1)[-1][0],
            state.tau)
        assert close(jets[order][0], numeric, 25)


def test_default_convention_solves_the_system(prec):
    for tau in ("2i", "0.3+1.4i", "-1/2+1i"):
        assert halphen_residual(tau, prec=prec) < mpmath.mpf(10) ** -40
    assert halphen_residual("2i", HalphenConvention(sign=-1), prec) > 1e-3


@pytest.mark.parametrize("thetas", [(2, 3, 4), (3, 4, 2), (4, 2, 3)])
def test_eta_sum_identity(thetas, prec):
    tau = mpmath.mpc("0.3", "1.4")
    state = theta_candidate(tau, HalphenConvention(1, thetas), prec)
    total = state.u + state.v + state.w
    assert close(total, ETA_SUM_MULTIPLE * eta_log_derivative(tau, 1, prec),
                 50)


def test_cusp_limit(prec):
    state = theta_candidate("40i", prec=prec)
    assert close(state.u, 1j * mpmath.pi / 2, 40)
    assert abs(state.v) < mpmath.mpf(10) ** -40
    assert abs(state.w) < mpmath.mpf(10) ** -40


def test_domain():
    with pytest.raises(DomainError):
        theta_candidate("0.5i")
    with pytest.raises(DomainError):
        d4_oracles([0, 0, 0, 0, 0, "1/2i"])
    with pytest.raises(UsageError):
        HalphenConvention(sign=2)
    with pytest.raises(UsageError):
        HalphenConvention(thetas=(2, 2, 4))


@pytest.mark.parametrize("end", ["5/2i", "2/5+23/10i"])
def test_integration_matches_theta(end, prec):
    start = theta_candidate("2i", prec=prec)
    state = halphen_integrate(start, end, tol=1e-22, prec=prec)
    oracle = theta_candidate(end, prec=prec)
    for a, b in zip(state.triple, oracle.triple):
        assert close(a, b, 20)


def test_step_halving_order(prec):
    start = theta_candidate("2i", prec=prec)
    oracle = theta_candidate("5/2i", prec=prec)

    def error(steps):
        state = halphen_integrate(start, "5/2i", fixed_steps=steps, prec=prec)
        return max(abs(a - b) for a, b in zip(state.triple, oracle.triple))

    assert error(10) / error(20) > 12


def test_blow_up():
    # u = v = w = 1 gives y' = y**2, a pole at tau = 1 + 2i
    start = HalphenState(mpmath.mpc(0, 2), mpmath.mpc(1), mpmath.mpc(1),
                         mpmath.mpc(1))
    with pytest.raises(IntegrationError) as err:
        halphen_integrate(start, "2+2i", tol=1e-8, prec=32)
    last = err.value.last_state
    assert last is not None
    assert abs(last.tau - mpmath.mpc(1, 2)) < 0.01


def test_convention_resolution(prec):
    convention, residuals = resolve_d4_convention(prec=prec)
    assert convention == HalphenConvention(**D4_CONVENTION)
    assert convention.label in residuals
    assert residuals[convention.label] < 1e-20


def test_unresolvable_convention(monkeypatch, prec):
    monkeypatch.setattr(halphen, "candidate_conventions",
                        lambda: iter([HalphenConvention(sign=-1)]))
    with pytest.raises(ConventionError) as err:
        resolve_d4_convention(prec=prec)
    assert err.value.residuals


def test_wrong_quartic_weight_breaks_wdvv(prec):
    F, _ = d4_oracles(prec=prec)
    wrong, _ = d4_oracles(convention=HalphenConvention(quartic_w=1), prec=prec)
    rng = np.random.default_rng(5)
    point = F.random_point(rng)
    assert metric_residual(F, point, prec) < mpmath.mpf(10) ** -50
    assert wdvv_residual(F, point, prec) < mpmath.mpf(10) ** -30
    assert wdvv_residual(wrong, point, prec) > 1e-6


def test_d4_random_point(prec):
    F, _ = d4_oracles(prec=prec)
    point = F.random_point(np.random.default_rng(3))
    assert all(isinstance(x, mpmath.mpf) for x in point[:5])
    assert isinstance(point[5], mpmath.mpc)
    assert 1.5 <= point[5].imag <= 2.5


def test_d4_getzler(prec):
    F, G = d4_oracles(prec=prec)
    report = getzler_scan(F, G, 3, seed=2, prec=prec)
    assert report.max_residual < 1e-20
    perturbed = getzler_scan(F, ScaledG(G, 2, 2), 3, seed=2, prec=prec)
    assert perturbed.max_residual > 1e-6


def test_d4_virasoro(prec):
    F, G = d4_oracles(prec=prec)
    point = F.random_point(np.random.default_rng(7))
    c = F.structure_constants(point)
    E = F.euler(point)
    mu = [mpmath.mpf(x) for x in (-0.5, 0, 0, 0, 0, 0.5)]
    assert virasoro_rhs(1, F.metric, c, E, mu, 1, prec) == 0
    square = c.dot(E).dot(E)
    lhs = square.dot(G.gradient(point))
    assert close(virasoro_rhs(2, F.metric, c, E, mu, 1, prec), lhs, 30)
