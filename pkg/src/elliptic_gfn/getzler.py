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
Residual of Getzler's genus one equations for a prepotential oracle and a
G-function oracle, together with polynomial prepotentials and a WDVV check.
'''

import itertools
import json
import logging
from dataclasses import dataclass, field

import mpmath
import numpy as np

from elliptic_gfn.config import DEFAULT_PRECISION, GUARD_DIGITS, to_mp
from elliptic_gfn.errors import MissingData, UsageError
from elliptic_gfn.exact_algebra import MultiPoly, as_rat

logger = logging.getLogger(__name__)

GETZLER_TERMS = ("3ccG''", "-4ccG''", "-ccG'", "2ccG'", "cc/6", "cc/24",
                 "-cc/4")


def _mp_array(values, shape=None):
    arr = np.empty(len(values), dtype=object)
    for i, v in enumerate(values):
        arr[i] = to_mp(v)
    return arr if shape is None else arr.reshape(shape)


class PrepotentialOracle(object):
    """
    Base class of prepotential oracles.

    Subclasses implement :meth:`derivative` for sorted index tuples; the
    dense tensors are filled by symmetry.

    Parameters
    ----------
    metric : array_like
        Constant flat metric eta_{ab}.
    weights : sequence
        Euler weights d_a, E = sum_a d_a t^a d/dt^a.
    d_charge : number
        Charge d of the manifold.
    """

    def __init__(self, metric, weights, d_charge):
        self.n = len(weights)
        self.metric = [[as_rat(x) for x in row] for row in metric]
        self.weights = tuple(as_rat(w) for w in weights)
        self.d_charge = as_rat(d_charge)
        if len(self.metric) != self.n or \
                any(len(row) != self.n for row in self.metric):
            raise UsageError("metric must be {0}x{0}".format(self.n))
        eta = mpmath.matrix([[to_mp(x) for x in row] for row in self.metric])
        if mpmath.det(eta) == 0:
            raise UsageError("the metric is singular")

    def derivative(self, point, indices):
        """d^k F / dt^indices at ``point``; ``indices`` sorted, 0 based."""
        raise NotImplementedError()

    def derivatives(self, point, order):
        """
        Dense, totally symmetric tensor of the order-th derivatives.

        Returns
        -------
        tensor : numpy.ndarray of object
            Shape (n,) * order, mpmath entries.
        """
        n = self.n
        out = np.empty((n,) * order, dtype=object)
        for key in itertools.combinations_with_replacement(range(n), order):
            value = self.derivative(point, key)
            for perm in set(itertools.permutations(key)):
                out[perm] = value
        return out

    def metric_inverse(self):
        eta = mpmath.matrix([[to_mp(x) for x in row] for row in self.metric])
        inv = eta ** -1
        return _mp_array([inv[a, b] for a in range(self.n)
                          for b in range(self.n)], (self.n, self.n))

    def euler(self, point):
        return _mp_array([to_mp(w) * to_mp(x)
                          for w, x in zip(self.weights, point)])

    def structure_constants(self, point):
        """c[nu, a, b] = c^nu_{ab} = eta^{nu l} F_{l a b}."""
        return np.tensordot(self.metric_inverse(), self.derivatives(point, 3),
                            axes=(1, 0))

    def random_point(self, rng):
        return [mpmath.mpf(float(x)) for x in rng.uniform(-1, 1, self.n)]


class PolynomialPrepotential(PrepotentialOracle):
    """
    Prepotential given by an exact polynomial; derivatives are exact
    polynomial derivatives evaluated at the point.
    """

    def __init__(self, poly, metric, weights, d_charge, name="polynomial"):
        super().__init__(metric, weights, d_charge)
        if poly.nvars != self.n:
            raise UsageError("prepotential has {} variables, metric {}".format(
                poly.nvars, self.n))
        self.poly = poly
        self.name = name
        self._cache = {(): poly}

    def _derived(self, indices):
        if indices not in self._cache:
            self._cache[indices] = self._derived(indices[:-1]).diff(
                indices[-1])
        return self._cache[indices]

    def derivative(self, point, indices):
        poly = self._derived(tuple(indices))
        if poly.is_zero():
            return mpmath.mpf(0)
        return poly.evaluate([to_mp(x) for x in point])

    @classmethod
    def from_json(cls, data):
        """
        Build from a dict with keys 'terms' ([{exps, coeff}]), 'metric',
        'euler_weights', 'd' and optionally 'name'.
        """
        try:
            terms = {tuple(term["exps"]): as_rat(term["coeff"])
                     for term in data["terms"]}
            nvars = len(data["euler_weights"])
            poly = MultiPoly(nvars, terms)
            return cls(poly, data["metric"], data["euler_weights"],
                       data["d"], name=data.get("name", "polynomial"))
        except (KeyError, TypeError, ValueError, UsageError) as err:
            raise MissingData("malformed prepotential data: {}".format(err))

    @classmethod
    def from_file(cls, path):
        try:
            with open(path) as fid:
                data = json.load(fid)
        except (OSError, ValueError) as err:
            raise MissingData("cannot read prepotential file {}: {}".format(
                path, err))
        return cls.from_json(data)


def a2_prepotential():
    """F = (1/2) t1^2 t2 + t2^4 / 72 with eta_{12} = 1, d = 1/3."""
    poly = MultiPoly(2, {(2, 1): "1/2", (0, 4): "1/72"})
    return PolynomialPrepotential(poly, [[0, 1], [1, 0]], ["1", "2/3"],
                                  "1/3", name="A2")


def cubic_prepotential():
    """F = t^3 / 6 in one variable."""
    return PolynomialPrepotential(MultiPoly(1, {(3,): "1/6"}), [[1]], ["1"],
                                  0, name="cubic")


class GOracle(object):
    """First and second derivatives of a G-function."""

    def __init__(self, n):
        self.n = n

    def gradient(self, point):
        raise NotImplementedError()

    def hessian(self, point):
        raise NotImplementedError()


class ZeroG(GOracle):

    def gradient(self, point):
        return _mp_array([0] * self.n)

    def hessian(self, point):
        return _mp_array([0] * self.n ** 2, (self.n, self.n))


class PolynomialG(GOracle):
    """G given by an exact polynomial."""

    def __init__(self, poly):
        super().__init__(poly.nvars)
        self.poly = poly

    def gradient(self, point):
        point = [to_mp(x) for x in point]
        return _mp_array([self.poly.diff(a).evaluate(point)
                          for a in range(self.n)])

    def hessian(self, point):
        point = [to_mp(x) for x in point]
        return _mp_array([self.poly.diff(a).diff(b).evaluate(point)
                          for a in range(self.n) for b in range(self.n)],
                         (self.n, self.n))


class ScaledG(GOracle):
    """Wraps another oracle, scaling gradient and hessian independently."""

    def __init__(self, base, gradient_factor=1, hessian_factor=1):
        super().__init__(base.n)
        self.base = base
        self.gradient_factor = to_mp(gradient_factor)
        self.hessian_factor = to_mp(hessian_factor)

    def gradient(self, point):
        return self.base.gradient(point) * self.gradient_factor

    def hessian(self, point):
        return self.base.hessian(point) * self.hessian_factor


def _contract(tensor, z, times):
    for _ in range(times):
        tensor = tensor.dot(z)
    return tensor


def getzler_terms(F, G, point, z, prec=DEFAULT_PRECISION):
    """
    The seven summands of sum z^4 Delta, in the order of the equation.

    Parameters
    ----------
    F : PrepotentialOracle
    G : GOracle
    point : sequence
        Flat coordinates.
    z : sequence
        Probe vector.

    Returns
    -------
    terms : list of mpmath numbers
    """
    n = F.n
    if len(point) != n or len(z) != n or G.n != n:
        raise UsageError("point, probe and oracles must have dimension "
                         "{}".format(n))
    with mpmath.workdps(prec + GUARD_DIGITS):
        point = [to_mp(x) for x in point]
        z = _mp_array(z)
        eta_inv = F.metric_inverse()
        c2 = np.tensordot(eta_inv, F.derivatives(point, 3), axes=(1, 0))
        c3 = np.tensordot(eta_inv, F.derivatives(point, 4), axes=(1, 0))
        c4 = np.tensordot(eta_inv, F.derivatives(point, 5), axes=(1, 0))
        g1 = G.gradient(point)
        g2 = G.hessian(point)

        Z2 = _contract(c2, z, 2)
        Z3 = _contract(c3, z, 3)
        C4 = _contract(c4, z, 4)
        M = c2.dot(z)
        N = _contract(c3, z, 2)
        c3z = c3.dot(z)
        trace2 = _mp_array([sum(c2[v, m, v] for v in range(n))
                            for m in range(n)])
        P = _mp_array([sum(c3z[v, m, v] for v in range(n)) for m in range(n)])
        Gz = g2.dot(z)

        return [3 * Z2.dot(g2).dot(Z2),
                -4 * Gz.dot(M.dot(Z2)),
                -g1.dot(N.dot(Z2)),
                2 * g1.dot(M.dot(Z3)),
                Z3.dot(P) / 6,
                C4.dot(trace2) / 24,
                -sum(N[m, v] * N[v, m] for m in range(n) for v in range(n))
                / 4]


def getzler_delta(F, G, point, z, prec=DEFAULT_PRECISION):
    """
    sum z_1 z_2 z_3 z_4 Delta_{1234} of Getzler's equation.

    Raises
    ------
    UsageError
        Singular metric or dimension mismatch.
    """
    with mpmath.workdps(prec + GUARD_DIGITS):
        return mpmath.fsum(getzler_terms(F, G, point, z, prec))


def wdvv_residual(F, point, prec=DEFAULT_PRECISION):
    """
    max |F_{ab l} eta^{lm} F_{m cd} - F_{ac l} eta^{lm} F_{m bd}|.
    """
    with mpmath.workdps(prec + GUARD_DIGITS):
        F3 = F.derivatives(point, 3)
        X = np.tensordot(np.tensordot(F3, F.metric_inverse(), axes=(2, 0)),
                         F3, axes=(2, 0))
        diff = X - X.transpose(0, 2, 1, 3)
        return max(abs(x) for x in diff.flat)


def metric_residual(F, point, prec=DEFAULT_PRECISION):
    """max |F_{1ab} - eta_{ab}|."""
    with mpmath.workdps(prec + GUARD_DIGITS):
        F3 = F.derivatives(point, 3)
        return max(abs(F3[0, a, b] - to_mp(F.metric[a][b]))
                   for a in range(F.n) for b in range(F.n))


@dataclass
class ScanReport:
    """
    Result of :func:`getzler_scan`.
    """
    oracle: str
    seed: int
    points: list = field(default_factory=list)
    probes: list = field(default_factory=list)
    residuals: list = field(default_factory=list)

    @property
    def max_residual(self):
        return max(abs(r) for r in self.residuals) if self.residuals else 0

    def to_json(self, digits=20):
        def text(x):
            return mpmath.nstr(x, digits)

        return {"oracle": self.oracle, "seed": self.seed,
                "points": [[text(x) for x in p] for p in self.points],
                "probes": [[text(x) for x in z] for z in self.probes],
                "residuals": [text(abs(r)) for r in self.residuals],
                "max_residual": text(self.max_residual)}


def getzler_scan(F, G, n_points, seed, prec=DEFAULT_PRECISION):
    """
    Evaluate the Getzler residual at reproducible random points and probes.

    Parameters
    ----------
    F : PrepotentialOracle
    G : GOracle
    n_points : int
    seed : int
        Seed of ``numpy.random.default_rng``.

    Returns
    -------
    report : ScanReport
    """
    rng = np.random.default_rng(seed)
    report = ScanReport(oracle=getattr(F, "name", type(F).__name__),
                        seed=seed)
    with mpmath.workdps(prec + GUARD_DIGITS):
        for _ in range(n_points):
            point = F.random_point(rng)
            z = [mpmath.mpf(float(x)) for x in rng.uniform(-1, 1, F.n)]
            residual = getzler_delta(F, G, point, z, prec)
            logger.debug("Getzler residual %s", mpmath.nstr(abs(residual), 5))
            report.points.append(point)
            report.probes.append(z)
            report.residuals.append(residual)
    return report
