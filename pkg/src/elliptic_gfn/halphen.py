# -*- coding: utf-8 -*-
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
Halphen's system, its theta-function solution and the D4^(1,1)
prepotential built on it.

The solution is taken as u = 2 (log theta_2)', v = 2 (log theta_3)',
w = 2 (log theta_4)' with tau-derivatives in the nome exp(i pi tau); the
assignment is re-derivable with :func:`resolve_d4_convention`.
'''

import itertools
import logging
from dataclasses import dataclass
from math import comb

import mpmath
import numpy as np

from elliptic_gfn.config import (D4_CONVENTION, DEFAULT_PRECISION,
                                 GUARD_DIGITS, parse_complex, to_mp)
from elliptic_gfn.errors import (ConventionError, DomainError,
                                 IntegrationError, UsageError)
from elliptic_gfn.exact_algebra import MultiPoly
from elliptic_gfn.getzler import GOracle, PrepotentialOracle, wdvv_residual
from elliptic_gfn.special_functions import eta_log_derivative, theta_constants

logger = logging.getLogger(__name__)

# theta series are summed where Im(tau) >= MIN_IM_TAU
MIN_IM_TAU = 1
BLOWUP = mpmath.mpf(10) ** 50
MIN_STEP = mpmath.mpf(10) ** -12


@dataclass(frozen=True)
class HalphenState:
    """Value (u, v, w) of a Halphen solution at tau."""
    tau: object
    u: object
    v: object
    w: object

    @property
    def triple(self):
        return (self.u, self.v, self.w)


@dataclass(frozen=True)
class HalphenConvention:
    """
    Parameters
    ----------
    sign : int
        u = sign * 2 (log theta)'.
    thetas : tuple of int
        Theta indices assigned to (u, v, w).
    quartic_w : int
        Weight of w in the coefficient u + v + quartic_w * w of sum t_i^4.
    """
    sign: int = 1
    thetas: tuple = (2, 3, 4)
    quartic_w: int = 4

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise UsageError("sign must be +1 or -1")
        if sorted(self.thetas) != [2, 3, 4]:
            raise UsageError("thetas must be a permutation of (2, 3, 4)")
        object.__setattr__(self, "thetas", tuple(self.thetas))

    @classmethod
    def default(cls):
        return cls(**D4_CONVENTION)

    @property
    def label(self):
        return "sign={:+d} thetas={} w-weight={}".format(
            self.sign, "".join(str(k) for k in self.thetas), self.quartic_w)

    def to_json(self):
        return {"sign": self.sign, "thetas": list(self.thetas),
                "quartic_w": self.quartic_w}


def halphen_rhs(triple):
    """(uv + uw - vw, vw + vu - wu, wu + wv - uv)."""
    u, v, w = triple
    return (u * v + u * w - v * w, v * w + v * u - w * u,
            w * u + w * v - u * v)


def closure_derivatives(state, order):
    """
    tau-derivatives of (u, v, w) of orders 0 .. ``order`` from the system
    itself, by Leibniz' rule on the quadratic right hand side.

    Returns
    -------
    jets : list of tuple
        jets[k] = (u^(k), v^(k), w^(k)).
    """
    triple = state.triple if isinstance(state, HalphenState) else state
    jets = [tuple(triple)]
    for k in range(order):
        def conv(x, y):
            return sum(comb(k, j) * jets[j][x] * jets[k - j][y]
                       for j in range(k + 1))
        uv, uw, vw = conv(0, 1), conv(0, 2), conv(1, 2)
        jets.append((uv + uw - vw, vw + uv - uw, uw + vw - uv))
    return jets


def _tau(tau, prec):
    if isinstance(tau, str):
        tau = parse_complex(tau, prec + GUARD_DIGITS)
    return mpmath.mpc(tau)


def _theta_logs(tau, prec):
    values = theta_constants(tau, 0, prec)
    first = theta_constants(tau, 1, prec)
    second = theta_constants(tau, 2, prec)
    logs, dlogs = {}, {}
    for k, th, d1, d2 in zip((2, 3, 4), values, first, second):
        logs[k] = d1 / th
        dlogs[k] = d2 / th - logs[k] ** 2
    return logs, dlogs


def theta_candidate(tau, convention=None, prec=DEFAULT_PRECISION):
    """
    Theta-function solution of Halphen's system at ``tau``.

    Parameters
    ----------
    tau : complex or str
        Im(tau) >= 1.
    convention : HalphenConvention, optional
        Defaults to the resolved D4 convention.

    Returns
    -------
    state : HalphenState
    """
    convention = convention or HalphenConvention.default()
    with mpmath.workdps(prec + GUARD_DIGITS):
        tau = _tau(tau, prec)
        if mpmath.im(tau) < MIN_IM_TAU:
            raise DomainError("theta solution needs Im(tau) >= {}, got "
                              "{}".format(MIN_IM_TAU, mpmath.nstr(tau, 8)))
        logs, _ = _theta_logs(tau, prec)
        u, v, w = (2 * convention.sign * logs[k] for k in convention.thetas)
        return HalphenState(tau, u, v, w)


def halphen_residual(tau, convention=None, prec=DEFAULT_PRECISION):
    """max |x' - rhs(x)| of the candidate at tau, with exact derivatives."""
    convention = convention or HalphenConvention.default()
    state = theta_candidate(tau, convention, prec)
    with mpmath.workdps(prec + GUARD_DIGITS):
        _, dlogs = _theta_logs(state.tau, prec)
        derivs = [2 * convention.sign * dlogs[k] for k in convention.thetas]
        rhs = halphen_rhs(state.triple)
        return max(abs(a - b) for a, b in zip(derivs, rhs))


def _rk4(y, h, f):
    k1 = f(y)
    k2 = f([a + h / 2 * b for a, b in zip(y, k1)])
    k3 = f([a + h / 2 * b for a, b in zip(y, k2)])
    k4 = f([a + h * b for a, b in zip(y, k3)])
    return [a + h / 6 * (b1 + 2 * b2 + 2 * b3 + b4)
            for a, b1, b2, b3, b4 in zip(y, k1, k2, k3, k4)]


def halphen_integrate(state0, tau1, tol=1e-20, fixed_steps=None,
                      prec=DEFAULT_PRECISION):
    """
    Integrate Halphen's system along the segment from ``state0.tau`` to
    ``tau1`` with classical Runge-Kutta.

    The step is controlled by step doubling: a full step is compared with
    two half steps and the Richardson-corrected half steps are accepted when
    the difference stays below ``tol``.

    Parameters
    ----------
    state0 : HalphenState
    tau1 : complex or str
    tol : float, optional
        Local error bound per step.
    fixed_steps : int, optional
        Take this many equal steps without error control.

    Returns
    -------
    state : HalphenState

    Raises
    ------
    IntegrationError
        The solution blows up or the step falls below MIN_STEP.
    """
    with mpmath.workdps(prec + GUARD_DIGITS):
        tau0 = mpmath.mpc(state0.tau)
        tau1 = _tau(tau1, prec)
        delta = tau1 - tau0
        tol = to_mp(tol)

        def f(y):
            return [delta * x for x in halphen_rhs(y)]

        def check(y, s):
            if any(abs(x) > BLOWUP for x in y):
                raise IntegrationError(
                    "Halphen solution blows up near tau = {}".format(
                        mpmath.nstr(tau0 + s * delta, 8)),
                    last_state=HalphenState(tau0 + s * delta, *last))

        y = [mpmath.mpc(x) for x in state0.triple]
        last = y
        if fixed_steps is not None:
            if fixed_steps < 1:
                raise UsageError("fixed_steps must be positive")
            h = mpmath.mpf(1) / fixed_steps
            for k in range(fixed_steps):
                y = _rk4(y, h, f)
                check(y, (k + 1) * h)
                last = y
            return HalphenState(tau1, *y)

        s, h, steps = mpmath.mpf(0), mpmath.mpf(1) / 16, 0
        while s < 1:
            h = min(h, 1 - s)
            full = _rk4(y, h, f)
            half = _rk4(_rk4(y, h / 2, f), h / 2, f)
            err = max(abs(a - b) for a, b in zip(full, half)) / 15
            scale = max(1, max(abs(x) for x in half))
            if err <= tol * scale:
                y = [b + (b - a) / 15 for a, b in zip(full, half)]
                s += h
                check(y, s)
                last = y
                steps += 1
                if err < tol * scale / 32:
                    h *= 2
            else:
                h /= 2
                if h < MIN_STEP:
                    raise IntegrationError(
                        "step size underflow near tau = {}".format(
                            mpmath.nstr(tau0 + s * delta, 8)),
                        last_state=HalphenState(tau0 + s * delta, *last))
        logger.debug("Halphen integration took %d steps", steps)
        return HalphenState(tau1, *y)


def _d4_pieces():
    n = 6
    t = [MultiPoly.variable(n, i) for i in range(n)]
    rest = range(1, 5)
    base = t[0] ** 2 * t[5] * "1/4" + \
        sum((t[i] ** 2 for i in rest), MultiPoly.zero(n)) * t[0] * "1/2"
    quartic = sum((t[i] ** 4 for i in rest), MultiPoly.zero(n)) * "-1/24"
    mixed = sum((t[i] ** 2 * t[j] ** 2
                 for i, j in itertools.combinations(rest, 2)),
                MultiPoly.zero(n)) * "-1/4"
    product = t[1] * t[2] * t[3] * t[4] * -1
    return base, quartic, mixed, product


class D4Prepotential(PrepotentialOracle):
    """
    Prepotential of D4^(1,1),

    F = t1^2 t6 / 4 + t1 sum t_i^2 / 2 - (u + v + 4w) sum t_i^4 / 24
        - (u + v) sum_{i<j} t_i^2 t_j^2 / 4 - (u - v) t2 t3 t4 t5

    with (u, v, w)(t6) the theta solution of Halphen's system; derivatives
    in t6 of every order come from :func:`closure_derivatives`.
    """

    name = "D4^(1,1)"

    def __init__(self, convention=None, prec=DEFAULT_PRECISION):
        metric = [[0] * 6 for _ in range(6)]
        metric[0][5] = metric[5][0] = "1/2"
        for i in range(1, 5):
            metric[i][i] = 1
        super().__init__(metric, ["1", "1/2", "1/2", "1/2", "1/2", "0"], 1)
        self.convention = convention or HalphenConvention.default()
        self.prec = prec
        self.base, quartic, mixed, product = _d4_pieces()
        kappa = self.convention.quartic_w
        # coefficient functions as weights of (u, v, w)
        self.pieces = [((1, 1, kappa), quartic), ((1, 1, 0), mixed),
                       ((1, -1, 0), product)]
        self._polys = {}
        self._jets = {}

    def _diff(self, key, poly, indices):
        if (key, indices) not in self._polys:
            for i in indices:
                poly = poly.diff(i)
            self._polys[(key, indices)] = poly
        return self._polys[(key, indices)]

    def jets(self, tau, order=5):
        key = (mpmath.mpc(tau), order)
        if key not in self._jets:
            state = theta_candidate(tau, self.convention, self.prec)
            self._jets[key] = closure_derivatives(state, order)
        return self._jets[key]

    def derivative(self, point, indices):
        point = [to_mp(x) for x in point]
        indices = tuple(indices)
        jets = self.jets(point[5])
        m6 = indices.count(5)
        rest = tuple(i for i in indices if i != 5)
        total = self._diff("base", self.base, indices).evaluate(point)
        for k, (weights, poly) in enumerate(self.pieces):
            part = self._diff(k, poly, rest)
            if part.is_zero():
                continue
            coeff = sum(c * x for c, x in zip(weights, jets[m6]))
            total += coeff * part.evaluate(point)
        return total

    def random_point(self, rng):
        flat = [mpmath.mpf(float(x)) for x in rng.uniform(-1, 1, 5)]
        t6 = mpmath.mpc(float(rng.uniform(-0.5, 0.5)),
                        float(rng.uniform(1.5, 2.5)))
        return flat + [t6]


class EtaG(GOracle):
    """G = -(1/2) log eta(t_n)."""

    def __init__(self, n=6, prec=DEFAULT_PRECISION):
        super().__init__(n)
        self.prec = prec

    def gradient(self, point):
        g = np.empty(self.n, dtype=object)
        g[:] = [mpmath.mpf(0)] * self.n
        g[-1] = -eta_log_derivative(point[-1], 1, self.prec) / 2
        return g

    def hessian(self, point):
        h = np.empty((self.n, self.n), dtype=object)
        h.fill(mpmath.mpf(0))
        h[-1, -1] = -eta_log_derivative(point[-1], 2, self.prec) / 2
        return h


def d4_oracles(point=None, convention=None, prec=DEFAULT_PRECISION):
    """
    Prepotential and G oracles of D4^(1,1).

    Parameters
    ----------
    point : sequence, optional
        If given, checked to lie in the domain Im(t6) >= 1.
    """
    if point is not None:
        if len(point) != 6:
            raise UsageError("D4^(1,1) points have 6 coordinates")
        if mpmath.im(_tau(point[5], prec)) < MIN_IM_TAU:
            raise DomainError("D4^(1,1) oracles need Im(t6) >= {}".format(
                MIN_IM_TAU))
    return D4Prepotential(convention, prec), EtaG(6, prec)


def candidate_conventions():
    for sign in (1, -1):
        for thetas in itertools.permutations((2, 3, 4)):
            for kappa in (1, 4):
                yield HalphenConvention(sign, thetas, kappa)


def resolve_d4_convention(taus=("2i", "1/2+3/2i"), n_points=2, seed=0,
                          tol=1e-20, prec=DEFAULT_PRECISION):
    """
    First convention, in a fixed enumeration order, whose theta candidate
    solves Halphen's system and whose prepotential satisfies WDVV.

    Returns
    -------
    convention : HalphenConvention
    residuals : dict
        label -> largest residual of every candidate tried.

    Raises
    ------
    ConventionError
        No candidate meets ``tol``.
    """
    residuals = {}
    for convention in candidate_conventions():
        halphen = max(halphen_residual(tau, convention, prec) for tau in taus)
        if halphen > tol:
            residuals[convention.label] = halphen
            continue
        F = D4Prepotential(convention, prec)
        rng = np.random.default_rng(seed)
        wdvv = max(wdvv_residual(F, F.random_point(rng), prec)
                   for _ in range(n_points))
        residuals[convention.label] = max(halphen, wdvv)
        if wdvv <= tol:
            logger.info("D4 convention resolved: %s", convention.label)
            return convention, residuals
    raise ConventionError("no Halphen convention satisfies the residual "
                          "checks", residuals)
