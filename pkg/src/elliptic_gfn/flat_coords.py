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
Flat coordinate of the marginal direction as a ratio of hypergeometric
functions, its inverse, and the linearization of the deformation
parameters around the point (0, ..., 0, t).
'''

import json
import logging
import os
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from elliptic_gfn.config import (DEFAULT_PRECISION, GUARD_DIGITS,
                                 parse_rational, to_mp)
from elliptic_gfn.errors import (ConvergenceError, DegenerateRing,
                                 DomainError, MissingData, UsageError)
from elliptic_gfn.exact_algebra import as_rat
from elliptic_gfn.milnor_ring import (SingularityModel, build_model,
                                      canonical_name)
from elliptic_gfn.special_functions import HypParams, hyp2f1

logger = logging.getLogger(__name__)

# real marginal inputs are restricted to |u| <= U_POLICY
U_POLICY = Fraction(9, 10)
MAX_NEWTON = 100


@dataclass(frozen=True)
class MarginalMap:
    """
    t = s * F(num; u) / F(den; u) with u = u_coeff * s**u_power.
    """
    model: str
    numerator: HypParams
    denominator: HypParams
    u_coeff: Fraction
    u_power: int

    def u_of_s(self, s):
        if isinstance(s, (int, Fraction)):
            return self.u_coeff * Fraction(s) ** self.u_power
        return to_mp(self.u_coeff) * s ** self.u_power

    def du_ds(self, s):
        return self.u_power * to_mp(self.u_coeff) * s ** (self.u_power - 1)

    def s_bound(self):
        """Largest real |s| with |u| <= U_POLICY."""
        return (to_mp(U_POLICY) / abs(to_mp(self.u_coeff))) ** \
            (mpmath.mpf(1) / self.u_power)


_MAPS = {
    "E6t": MarginalMap("E6t", HypParams("2/3", "2/3", "4/3"),
                       HypParams("1/3", "1/3", "2/3"), Fraction(-1, 27), 3),
    "E7t": MarginalMap("E7t", HypParams("3/4", "3/4", "3/2"),
                       HypParams("1/4", "1/4", "1/2"), Fraction(1, 4), 2),
    "E8t": MarginalMap("E8t", HypParams("5/12", "11/12", "4/3"),
                       HypParams("1/12", "7/12", "2/3"), Fraction(-4, 27), 3),
}


def _model(model):
    if isinstance(model, SingularityModel):
        return model
    return build_model(model)


def marginal_map(model):
    return _MAPS[_model(model).name]


def _check_s(model, mmap, s, prec=DEFAULT_PRECISION):
    """Validate s against the discriminant and the |u| policy; return (s, u).

    Rational input is tested against the discriminant exactly, anything else
    against a tolerance of 10**-prec.
    """
    if isinstance(s, (int, str, Fraction)):
        s = parse_rational(s)
        degenerate = model.discriminant_at(s) == 0
    else:
        s = to_mp(s)
        degenerate = abs(model.discriminant_at(s)) <= mpmath.mpf(10) ** -prec
    if degenerate:
        raise DegenerateRing("{}: discriminant vanishes at s = {}".format(
            model.name, s if isinstance(s, Fraction) else mpmath.nstr(s, 15)))
    s = to_mp(s)
    u = mmap.u_of_s(s)
    if abs(u) > to_mp(U_POLICY) * (1 + mpmath.mpf(10) ** -30):
        raise DomainError("{}: s = {} gives |u| = {} outside the policy "
                          "|u| <= {}".format(model.name, mpmath.nstr(s, 15),
                                             mpmath.nstr(abs(u), 8),
                                             U_POLICY))
    return s, u


def g_of_s(model, s, derivative_order=0, prec=DEFAULT_PRECISION):
    """g(u) = F(den; u) (or its u-derivative) at u = u(s)."""
    model = _model(model)
    mmap = marginal_map(model)
    with mpmath.workdps(prec + GUARD_DIGITS):
        s, u = _check_s(model, mmap, s, prec)
        return hyp2f1(mmap.denominator, u, derivative_order, prec=prec)


def t_of_s(model, s, prec=DEFAULT_PRECISION):
    """
    Flat marginal coordinate t(s).

    Parameters
    ----------
    model : SingularityModel or str
    s : number
        Marginal deformation parameter.
    prec : int, optional
        Decimal digits.

    Returns
    -------
    t : mpmath number
    """
    model = _model(model)
    mmap = marginal_map(model)
    with mpmath.workdps(prec + GUARD_DIGITS):
        s, u = _check_s(model, mmap, s, prec)
        return s * hyp2f1(mmap.numerator, u, prec=prec) / \
            hyp2f1(mmap.denominator, u, prec=prec)


def dt_ds(model, s, route="wronskian", prec=DEFAULT_PRECISION):
    """
    Derivative dt/ds.

    Parameters
    ----------
    route : {'wronskian', 'series'}
        'wronskian' evaluates 1/((1-u) g(u)^2); 'series' differentiates the
        hypergeometric quotient directly.
    """
    model = _model(model)
    mmap = marginal_map(model)
    with mpmath.workdps(prec + GUARD_DIGITS):
        s, u = _check_s(model, mmap, s, prec)
        den = hyp2f1(mmap.denominator, u, prec=prec)
        if route == "wronskian":
            return 1 / ((1 - u) * den ** 2)
        if route != "series":
            raise UsageError("unknown route {!r}".format(route))
        num = hyp2f1(mmap.numerator, u, prec=prec)
        dnum = hyp2f1(mmap.numerator, u, 1, prec=prec)
        dden = hyp2f1(mmap.denominator, u, 1, prec=prec)
        return num / den + s * (dnum * den - num * dden) / den ** 2 * \
            mmap.du_ds(s)


def ds_dt(model, s, prec=DEFAULT_PRECISION):
    with mpmath.workdps(prec + GUARD_DIGITS):
        return 1 / dt_ds(model, s, prec=prec)


def bisect_inverse(model, t, lo, hi, tol, prec=DEFAULT_PRECISION):
    """Solve t_of_s(s) = t for real s in [lo, hi] by bisection."""
    model = _model(model)
    with mpmath.workdps(prec + GUARD_DIGITS):
        f_lo = t_of_s(model, lo, prec) - t
        f_hi = t_of_s(model, hi, prec) - t
        if f_lo * f_hi > 0:
            raise DomainError(
                "t = {} is not bracketed by s in [{}, {}]".format(
                    mpmath.nstr(t, 15), mpmath.nstr(lo, 8),
                    mpmath.nstr(hi, 8)))
        while hi - lo > tol:
            mid = (lo + hi) / 2
            f_mid = t_of_s(model, mid, prec) - t
            if f_mid == 0:
                return mid
            if (f_mid < 0) == (f_lo < 0):
                lo, f_lo = mid, f_mid
            else:
                hi = mid
        return (lo + hi) / 2


def s_of_t(model, t, prec=DEFAULT_PRECISION, full_output=False):
    """
    Invert the flat coordinate map by safeguarded Newton iteration.

    Newton starts from s0 = t. For real t the iterate is kept inside the
    policy interval; a step that leaves it is replaced by bisection of the
    current bracket.

    Parameters
    ----------
    model : SingularityModel or str
    t : number
    prec : int, optional
    full_output : bool, optional
        Also return the number of iterations.

    Returns
    -------
    s : mpmath number
    iterations : int
        Only when ``full_output`` is set.

    Raises
    ------
    ConvergenceError
        No convergence within 100 iterations.
    """
    model = _model(model)
    mmap = marginal_map(model)
    with mpmath.workdps(prec + GUARD_DIGITS):
        t = to_mp(t)
        tol = mpmath.mpf(10) ** (-prec + 6)
        real = not isinstance(t, mpmath.mpc) or mpmath.im(t) == 0
        if real:
            t = mpmath.re(t)
            bound = mmap.s_bound()
            lo, hi = -bound, bound
            if not t_of_s(model, lo, prec) <= t <= t_of_s(model, hi, prec):
                raise DomainError("{}: t = {} lies outside the image of the "
                                  "policy interval".format(
                                      model.name, mpmath.nstr(t, 15)))
        s = t
        if real and not lo < s < hi:
            s = (lo + hi) / 2
        for iteration in range(1, MAX_NEWTON + 1):
            f = t_of_s(model, s, prec) - t
            if real:
                if f < 0:
                    lo = s
                elif f > 0:
                    hi = s
            step = f / dt_ds(model, s, prec=prec)
            s_new = s - step
            if real and not lo < s_new < hi:
                s_new = (lo + hi) / 2
                logger.info("%s: Newton step left the bracket, bisecting to "
                            "%s", model.name, mpmath.nstr(s_new, 15))
            logger.debug("%s Newton iteration %d: s = %s, |ds| = %s",
                         model.name, iteration, mpmath.nstr(s_new, 20),
                         mpmath.nstr(abs(s_new - s), 5))
            converged = abs(s_new - s) < tol
            s = s_new
            if converged:
                return (s, iteration) if full_output else s
        raise ConvergenceError("{}: Newton inversion of t = {} did not "
                               "converge in {} iterations".format(
                                   model.name, mpmath.nstr(t, 15),
                                   MAX_NEWTON), last_iterate=s)


# -- linearization at (0, ..., 0, t) ------------------------------------------

@dataclass
class LinearizationData:
    """
    First and second order data of s(t) at the point (0, ..., 0, t).

    Attributes
    ----------
    model : str
    s : mpmath number
        Marginal deformation value of the point.
    diag : dict
        (a, mu) -> ds^a/dt^mu for the non-marginal indices.
    cross : dict
        (a, mu, mustar) -> d^2 s^a / dt^mu dt^mustar, stored symmetrically.
    source : str
        'builtin' or 'external-file'.
    """
    model: str
    s: object
    diag: dict = field(default_factory=dict)
    cross: dict = field(default_factory=dict)
    source: str = "builtin"

    def d(self, a, mu):
        return self.diag.get((a, mu), 0)

    def second(self, a, mu, mustar):
        return self.cross.get((a, mu, mustar), 0)


def _e6_builtin(model, s, prec):
    mmap = marginal_map(model)
    u = mmap.u_of_s(s)
    g = hyp2f1(mmap.denominator, u, prec=prec)
    gp = hyp2f1(mmap.denominator, u, 1, prec=prec)
    third = (1 - u) ** (mpmath.mpf(1) / 3) * g
    two_thirds = (1 - u) ** (mpmath.mpf(2) / 3) * g
    lin = LinearizationData(model=model.name, s=s)
    lin.diag[(1, 1)] = mpmath.mpf(1)
    for a in (2, 3, 4):
        lin.diag[(a, a)] = third
    for a in (5, 6, 7):
        lin.diag[(a, a)] = two_thirds
    value = s ** 2 * (1 - u) * g * gp / 9
    for mu in range(2, 8):
        lin.cross[(1, mu, model.pair(mu))] = value
    return lin


def load_linearization(path):
    """
    Read and validate a linearization file.

    Returns
    -------
    data : dict
        The parsed document.

    Raises
    ------
    MissingData
        Missing or malformed file.
    """
    if not os.path.exists(path):
        raise MissingData("linearization file {} not found".format(path))
    try:
        with open(path) as fid:
            data = json.load(fid)
    except ValueError as err:
        raise MissingData("linearization file {} is not valid JSON: "
                          "{}".format(path, err))
    for key in ("model", "diag", "cross"):
        if key not in data:
            raise MissingData("linearization file {} lacks '{}'".format(
                path, key))
    if "source" not in data:
        warnings.warn("linearization file {} does not name its source".format(
            path))
    try:
        for entry in data["diag"]:
            int(entry["index"])
            for item in entry["pairs"]:
                for term in item.get("terms", [item]):
                    _check_term(term)
        for entry in data["cross"]:
            int(entry["a"]), int(entry["mu"]), int(entry["mustar"])
            for term in entry["terms"]:
                _check_term(term)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as err:
        raise MissingData("malformed linearization file {}: {}".format(
            path, err))
    return data


def _check_term(term):
    as_rat(term["coeff"])
    as_rat(term.get("pow_1mu", "0"))
    int(term.get("spow", 0))
    for item in _hyp_items(term.get("hyp")):
        if isinstance(item, dict):
            HypParams.from_json(item)
        elif item not in ("g", "gprime"):
            raise ValueError("unknown hypergeometric factor {!r}".format(item))


def _hyp_items(hyp):
    if hyp is None:
        return []
    if isinstance(hyp, list):
        return hyp
    return [hyp]


def _eval_terms(terms, mmap, s, u, prec):
    total = mpmath.mpf(0)
    for term in terms:
        value = to_mp(as_rat(term["coeff"]))
        power = as_rat(term.get("pow_1mu", "0"))
        if power:
            value *= (1 - u) ** to_mp(power)
        for item in _hyp_items(term.get("hyp")):
            if item == "g":
                value *= hyp2f1(mmap.denominator, u, prec=prec)
            elif item == "gprime":
                value *= hyp2f1(mmap.denominator, u, 1, prec=prec)
            else:
                value *= hyp2f1(HypParams.from_json(item), u, prec=prec)
        value *= s ** int(term.get("spow", 0))
        total += value
    return total


def linearization(model, s, path=None, prec=DEFAULT_PRECISION):
    """
    Linearization data of s(t) at (0, ..., 0, t(s)).

    Parameters
    ----------
    model : SingularityModel or str
    s : number
        Marginal value.
    path : str, optional
        External linearization file. Required for E7t and E8t.

    Returns
    -------
    lin : LinearizationData

    Raises
    ------
    MissingData
        For E7t/E8t without a file, or for a file of another model.
    """
    model = _model(model)
    mmap = marginal_map(model)
    with mpmath.workdps(prec + GUARD_DIGITS):
        s, u = _check_s(model, mmap, s, prec)
        if path is None:
            if model.name != "E6t":
                raise MissingData(
                    "{} linearization data is not built in; supply a "
                    "linearization file".format(model.name))
            return _e6_builtin(model, s, prec)

        data = load_linearization(path)
        if canonical_name(data["model"]) != model.name:
            raise MissingData("{} holds data for {}, not {}".format(
                path, data["model"], model.name))
        lin = LinearizationData(model=model.name, s=s, source="external-file")
        for entry in data["diag"]:
            a = int(entry["index"])
            plain = [item for item in entry["pairs"] if "mu" not in item]
            if plain:
                lin.diag[(a, a)] = _eval_terms(plain, mmap, s, u, prec)
            for item in entry["pairs"]:
                if "mu" in item:
                    lin.diag[(a, int(item["mu"]))] = _eval_terms(
                        item["terms"], mmap, s, u, prec)
        for entry in data["cross"]:
            a, mu, mustar = (int(entry[k]) for k in ("a", "mu", "mustar"))
            value = _eval_terms(entry["terms"], mmap, s, u, prec)
            lin.cross[(a, mu, mustar)] = value
            lin.cross[(a, mustar, mu)] = value
        logger.debug("loaded %d diagonal and %d cross entries from %s",
                     len(lin.diag), len(data["cross"]), path)
        return lin


def jacobian_at_origin(model, s, lin=None, prec=DEFAULT_PRECISION):
    """
    The matrix ds^a/dt^mu at (0, ..., 0, t(s)) and its determinant.

    Returns
    -------
    matrix : mpmath.matrix
    det : mpmath number
    """
    model = _model(model)
    with mpmath.workdps(prec + GUARD_DIGITS):
        lin = lin or linearization(model, s, prec=prec)
        n = model.n
        J = mpmath.matrix(n, n)
        for (a, mu), value in lin.diag.items():
            J[a - 1, mu - 1] = value
        J[n - 1, n - 1] = ds_dt(model, s, prec=prec)
        return J, mpmath.det(J)
