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
Named verification suites and their JSON / CSV reports.
'''

import csv
import io
import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from multiprocessing import Pool

import mpmath

from elliptic_gfn.config import (D4_CONVENTION, GUARD_DIGITS, RunConfig,
                                 parse_rational, to_mp)
from elliptic_gfn.errors import UsageError
from elliptic_gfn.exact_algebra import MultiPoly
from elliptic_gfn.flat_coords import (ds_dt, dt_ds, g_of_s,
                                      jacobian_at_origin, marginal_map,
                                      s_of_t, t_of_s)
from elliptic_gfn.g_function import (coxeter_g_coefficient, dg_dt_closed,
                                     dg_dt_ring, eta_translation_shift,
                                     folding_g, folding_spectrum,
                                     modular_and_inversion_transform,
                                     scaling_anomaly, spectrum_of,
                                     tau_minus48)
from elliptic_gfn.getzler import (PolynomialG, ZeroG, a2_prepotential,
                                  cubic_prepotential, getzler_delta,
                                  getzler_scan)
from elliptic_gfn.halphen import (HalphenConvention, d4_oracles,
                                  halphen_integrate, halphen_residual,
                                  resolve_d4_convention, theta_candidate)
from elliptic_gfn.milnor_ring import MODEL_NAMES, build_model, hessian_mult_det

logger = logging.getLogger(__name__)

CSV_COLUMNS = ("suite", "check", "value", "reference", "abs_err", "tol",
               "pass")
DIGITS = 20

# expected Coxeter coefficients, (N, coefficient of log kappa)
COXETER_TABLE = {
    "A4": [], "D5": [], "E6": [], "E7": [], "E8": [],
    "B3": [(4, Fraction(-1, 48))],
    "F4": [(4, Fraction(-1, 48))],
    "H3": [(5, Fraction(-1, 20))],
    "H4": [(5, Fraction(-1, 20))],
}

# system -> (gamma, coefficient of log kappa)
FOLDING_TABLE = {
    "B3^(1,1)": (Fraction(-1, 48), Fraction(-1, 48)),
    "B2^(2,1)": (Fraction(-1, 24), Fraction(-1, 48)),
    "G2^(1,1)": (Fraction(-1, 24), Fraction(-1, 12)),
    "D4^(1,1)": (Fraction(0), Fraction(0)),
    "G2^(3,1)": (Fraction(-1, 18), Fraction(-1, 12)),
}

# Ẽ6 deformations for the tau_I check; the last has |u| close to 9/10
TAU_POINTS = (
    {"s": Fraction(1, 2), "s2": Fraction(1, 5), "s5": Fraction(-2, 7),
     "s7": Fraction(1, 3)},
    {"s": Fraction(-3, 4), "s3": Fraction(2, 3), "s4": Fraction(1, 7),
     "s6": Fraction(-1, 2)},
    {"s": Fraction(57, 20), "s3": Fraction(1, 4), "s4": Fraction(-1, 3),
     "s6": Fraction(2, 5)},
)


def _text(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (int, str)):
        return str(x)
    return mpmath.nstr(x, DIGITS)


@dataclass
class Check:
    """One numeric comparison of a suite."""
    suite: str
    check: str
    value: object
    reference: object
    abs_err: object
    tol: float
    passed: bool

    def row(self):
        return {"suite": self.suite, "check": self.check,
                "value": _text(self.value),
                "reference": _text(self.reference),
                "abs_err": _text(self.abs_err), "tol": repr(self.tol),
                "pass": self.passed}


@dataclass
class SuiteReport:
    suite: str
    precision: int
    seed: int
    checks: list = field(default_factory=list)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def add(self, check, value, reference, tol, below=True):
        """
        Record |value - reference| against ``tol``; with ``below=False`` the
        check passes when the error exceeds ``tol`` (negative controls).
        """
        err = abs(value - reference)
        passed = err <= tol if below else err > tol
        self.checks.append(Check(self.suite, check, value, reference, err,
                                 tol, bool(passed)))

    def to_json(self):
        return {"suite": self.suite, "precision": self.precision,
                "seed": self.seed, "pass": self.passed,
                "checks": [c.row() for c in self.checks]}


def report_json(reports):
    return json.dumps([r.to_json() for r in reports], indent=2,
                      sort_keys=True)


def report_csv(reports):
    out = io.StringIO()
    writer = csv.DictWriter(out, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for report in reports:
        for check in report.checks:
            writer.writerow(check.row())
    return out.getvalue()


def report_pretty(reports):
    lines = []
    for report in reports:
        lines.append("{} ({} digits): {}".format(
            report.suite, report.precision,
            "PASS" if report.passed else "FAIL"))
        for check in report.checks:
            lines.append("  [{}] {:<36} err {} (tol {})".format(
                "ok" if check.passed else "!!", check.check,
                _text(check.abs_err), check.tol))
    return "\n".join(lines)


def _map(func, args, n_proc):
    if n_proc > 1 and len(args) > 1:
        with Pool(n_proc) as pool:
            return pool.starmap(func, args)
    return [func(*a) for a in args]


# -- per point workers (module level so they pickle) -------------------------

def _two_route_point(s, prec):
    s = parse_rational(s)
    ring = dg_dt_ring("e6t", s, prec=prec)
    closed = dg_dt_closed("e6t", t_of_s("e6t", s, prec), prec=prec)
    return ring, closed


def _roundtrip_point(model, t, prec):
    s, iterations = s_of_t(model, t, prec, full_output=True)
    return t_of_s(model, s, prec), iterations


def _getzler_d4_point(seed, prec):
    F, G = d4_oracles(prec=prec)
    report = getzler_scan(F, G, 1, seed, prec)
    return report.residuals[0]


# -- suites -------------------------------------------------------------------

def _suite_e6_two_route(report, config, tol):
    results = _map(_two_route_point,
                   [(s, config.precision) for s in config.s_grid],
                   config.n_proc)
    for s, (ring, closed) in zip(config.s_grid, results):
        report.add("s={}".format(s), ring, closed, tol)


def _samples(model, count):
    bound = marginal_map(model).s_bound() * mpmath.mpf("0.95")
    return [-bound + 2 * bound * k / (count - 1) for k in range(count)]


def _suite_wronskian(report, config, tol):
    prec = config.precision
    e6 = build_model("e6t")
    for model in MODEL_NAMES:
        worst = max(abs(dt_ds(model, s, prec=prec) -
                        dt_ds(model, s, route="series", prec=prec))
                    for s in _samples(model, 20))
        report.add("{} dt/ds routes".format(model), worst, 0, tol)
    worst = 0
    for s in _samples(e6, 20):
        if s == 0:
            continue
        g = g_of_s(e6, s, prec=prec)
        u = marginal_map(e6).u_of_s(s)
        dlog = -marginal_map(e6).du_ds(s) / (1 - u) * ds_dt(e6, s, prec)
        worst = max(worst, abs(s ** 2 * g ** 2 - 9 * dlog))
    report.add("E6t s^2 g^2 = 9 dlog(1-u)", worst, 0, tol)
    worst = 0
    for s in _samples(e6, 10):
        _, det = jacobian_at_origin(e6, s, prec=prec)
        worst = max(worst, abs(det - ds_dt(e6, s, prec) ** 4))
    report.add("E6t Jacobian determinant", worst, 0, tol)


def _suite_roundtrip(report, config, tol):
    prec = config.precision
    for model in MODEL_NAMES:
        bound = t_of_s(model, marginal_map(model).s_bound() *
                       mpmath.mpf("0.9"), prec)
        ts = [-bound + 2 * bound * k / 19 for k in range(20)]
        results = _map(_roundtrip_point, [(model, t, prec) for t in ts],
                       config.n_proc)
        worst = max(abs(back - t) for t, (back, _) in zip(ts, results))
        report.add("{} t(s(t)) - t".format(model), worst, 0, tol)
        iterations = max(it for _, it in results)
        report.checks.append(Check(report.suite,
                                   "{} Newton iterations".format(model),
                                   iterations, 20, max(0, iterations - 20),
                                   0, iterations <= 20))


def _suite_anomalies(report, config, tol):
    for model in MODEL_NAMES:
        report.add("gamma {}".format(model),
                   scaling_anomaly(spectrum_of(model)), Fraction(0), tol)
    for system, (gamma, _) in FOLDING_TABLE.items():
        report.add("gamma {}".format(system),
                   scaling_anomaly(folding_spectrum(system)), gamma, tol)


def _coefficient_distance(got, expected):
    if [N for N, _ in got] != [N for N, _ in expected]:
        return Fraction(1)
    return sum((abs(a - b) for (_, a), (_, b) in zip(got, expected)),
               Fraction(0))


def _suite_coxeter_table(report, config, tol):
    for group, expected in COXETER_TABLE.items():
        got = coxeter_g_coefficient(group)
        err = _coefficient_distance(got, expected)
        report.checks.append(Check(report.suite, "coefficients {}".format(
            group), str(got), str(expected), err, tol, err <= tol))


def _suite_folding_table(report, config, tol):
    for system, (gamma, kappa) in FOLDING_TABLE.items():
        g = folding_g(system)
        report.add("gamma {}".format(system), g.gamma, gamma, tol)
        report.add("kappa {}".format(system), g.kappa_coefficient, kappa,
                   tol)
        report.add("eta {}".format(system), g.eta_coefficient,
                   Fraction(0) if system == "G2^(3,1)" else Fraction(-1, 2),
                   tol)


def _suite_getzler_a2(report, config, tol):
    prec = config.precision
    cubic = getzler_delta(cubic_prepotential(), ZeroG(1),
                          [mpmath.mpf("0.3")], [mpmath.mpf("1.7")], prec)
    report.add("cubic", cubic, 0, 0)
    F = a2_prepotential()
    scan = getzler_scan(F, ZeroG(2), config.points, config.seed, prec)
    report.add("A2 with G = 0", scan.max_residual, 0, tol)
    perturbed = getzler_scan(F, PolynomialG(MultiPoly.variable(2, 1)),
                             config.points, config.seed, prec)
    report.add("A2 with G = t2 (negative control)", perturbed.max_residual,
               0, 1e-6, below=False)


def _suite_getzler_d4(report, config, tol):
    seeds = [config.seed + k for k in range(config.points)]
    residuals = _map(_getzler_d4_point,
                     [(seed, config.precision) for seed in seeds],
                     config.n_proc)
    for seed, residual in zip(seeds, residuals):
        report.add("D4 seed {}".format(seed), residual, 0, tol)


def _suite_halphen(report, config, tol):
    prec = config.precision
    for tau in ("2i", "1/3+3/2i", "-1/2+1i"):
        report.add("theta residual tau={}".format(tau),
                   halphen_residual(tau, prec=prec), 0, tol)
    start = theta_candidate("2i", prec=prec)
    end = halphen_integrate(start, "5/2i", tol=tol / 100, prec=prec)
    oracle = theta_candidate("5/2i", prec=prec)
    report.add("RK4 2i -> 5/2i",
               max(abs(a - b) for a, b in zip(end.triple, oracle.triple)), 0,
               tol)
    convention, residuals = resolve_d4_convention(prec=prec)
    frozen = HalphenConvention(**D4_CONVENTION)
    report.checks.append(Check(report.suite, "resolved convention",
                               convention.label, frozen.label,
                               residuals[convention.label], tol,
                               convention == frozen))


def _suite_hessian_tau(report, config, tol):
    prec = config.precision
    e6 = build_model("e6t")
    for k, point in enumerate(TAU_POINTS, 1):
        value = tau_minus48(e6, point, prec)
        report.checks.append(Check(
            report.suite, "tau^-48 point {}".format(k), value,
            "finite, non-zero", 0, tol,
            bool(mpmath.isfinite(value) and value != 0)))
    det = hessian_mult_det(e6, {"s": Fraction(1, 2)})
    report.add("Hessian nilpotent at 0*", to_mp(det), 0, 0)
    shift = eta_translation_shift("2i", prec)
    report.add("eta G shift", shift, -1j * mpmath.pi / 24, tol)
    point = [0] * 7 + [2]
    coefficient = modular_and_inversion_transform(
        e6, point, prec=prec).shift_coefficient
    report.add("inversion shift E6t", coefficient, Fraction(-1, 6), 0)


SUITES = {
    "e6-two-route": _suite_e6_two_route,
    "wronskian": _suite_wronskian,
    "roundtrip": _suite_roundtrip,
    "anomalies": _suite_anomalies,
    "coxeter-table": _suite_coxeter_table,
    "folding-table": _suite_folding_table,
    "getzler-a2": _suite_getzler_a2,
    "getzler-d4": _suite_getzler_d4,
    "halphen": _suite_halphen,
    "hessian-tau": _suite_hessian_tau,
}


def run_suite(name, config=None):
    """
    Run one verification suite.

    Parameters
    ----------
    name : str
        One of :data:`SUITES`.
    config : RunConfig, optional

    Returns
    -------
    report : SuiteReport
        Checks in a fixed order; identical inputs give identical reports.
    """
    config = config or RunConfig()
    if name not in SUITES:
        raise UsageError("unknown suite {!r}, choose one of {}".format(
            name, ", ".join(SUITES)))
    tol = config.tolerance(name)
    report = SuiteReport(name, config.precision, config.seed)
    with mpmath.workdps(config.precision + GUARD_DIGITS):
        SUITES[name](report, config, tol)
    failed = [c.check for c in report.checks if not c.passed]
    if failed:
        logger.warning("suite %s failed checks: %s", name, ", ".join(failed))
    else:
        logger.info("suite %s passed %d checks", name, len(report.checks))
    return report
