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
Arbitrary precision special functions: the Gauss hypergeometric series,
the Dedekind eta function, the quasi-modular Eisenstein series E2 and the
Jacobi theta constants.

All evaluators take the working precision in decimal digits as the ``prec``
keyword and compute inside ``mpmath.workdps(prec + GUARD_DIGITS)``; returned
mpmath numbers keep the guard digits.
'''

import logging
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import sympy

from elliptic_gfn.config import (DEFAULT_PRECISION, GUARD_DIGITS,
                                 parse_complex, to_mp)
from elliptic_gfn.errors import ConvergenceError, DomainError, UsageError
from elliptic_gfn.exact_algebra import as_rat

logger = logging.getLogger(__name__)

# largest |u| accepted by the series after the optional Pfaff step
U_LIMIT = mpmath.mpf("0.98")
PFAFF_BELOW = mpmath.mpf("-0.5")
MAX_TERMS = 200000


@dataclass(frozen=True)
class HypParams:
    """
    Parameters (a, b, c) of the Gauss hypergeometric function.

    Parameters
    ----------
    a, b, c : Fraction
        ``c`` must not be a non-positive integer.
    """
    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, as_rat(getattr(self, name)))
        if self.c.denominator == 1 and self.c <= 0:
            raise UsageError("c = {} is a non-positive integer".format(self.c))

    def shifted(self):
        """Parameters of the derivative, (a+1, b+1, c+1)."""
        return HypParams(self.a + 1, self.b + 1, self.c + 1)

    def pfaff(self):
        return HypParams(self.a, self.c - self.b, self.c)

    def to_json(self):
        return {"a": str(self.a), "b": str(self.b), "c": str(self.c)}

    @classmethod
    def from_json(cls, data):
        return cls(data["a"], data["b"], data["c"])


def _series(p, u, prec):
    a, b, c = to_mp(p.a), to_mp(p.b), to_mp(p.c)
    tol = mpmath.mpf(10) ** (-(prec + GUARD_DIGITS))
    term = mpmath.mpf(1)
    total = term
    for k in range(MAX_TERMS):
        ratio = (a + k) * (b + k) / ((c + k) * (k + 1)) * u
        term = term * ratio
        total += term
        if term == 0:
            return total
        if abs(ratio) < 1 and abs(term) <= tol * abs(total):
            logger.debug("2F1%s at u=%s: %d terms", p.to_json(),
                         mpmath.nstr(u, 8), k + 1)
            return total
    raise ConvergenceError("hypergeometric series did not converge in {} "
                           "terms".format(MAX_TERMS), last_iterate=total)


def _transformed(p, u, prec):
    if mpmath.re(u) < PFAFF_BELOW:
        w = u / (u - 1)
        if abs(w) > U_LIMIT:
            raise DomainError("u = {} is outside the evaluation domain".format(
                mpmath.nstr(u, 10)))
        return (1 - u) ** (-to_mp(p.a)) * _series(p.pfaff(), w, prec)
    if abs(u) > U_LIMIT:
        raise DomainError("|u| = {} exceeds {} and no transformation "
                          "applies".format(mpmath.nstr(abs(u), 10), U_LIMIT))
    return _series(p, u, prec)


def hyp2f1(p, u, derivative_order=0, prec=DEFAULT_PRECISION):
    """
    Gauss hypergeometric function 2F1(a, b; c; u) or its u-derivative.

    Parameters
    ----------
    p : HypParams
    u : number
        Real or complex argument. Arguments with Re(u) < -1/2 go through
        the Pfaff transformation.
    derivative_order : {0, 1}
        The derivative uses (ab/c) 2F1(a+1, b+1; c+1; u).
    prec : int, optional
        Decimal digits.

    Returns
    -------
    value : mpmath.mpf or mpmath.mpc

    Raises
    ------
    DomainError
        When |u| (after transformation) exceeds 0.98.
    """
    if derivative_order not in (0, 1):
        raise UsageError("derivative_order must be 0 or 1")
    with mpmath.workdps(prec + GUARD_DIGITS):
        u = to_mp(u)
        if derivative_order == 0:
            return _transformed(p, u, prec)
        return to_mp(p.a * p.b / p.c) * _transformed(p.shifted(), u, prec)


def _upper(tau, prec):
    if isinstance(tau, str):
        tau = parse_complex(tau, prec + GUARD_DIGITS)
    tau = mpmath.mpc(tau)
    if mpmath.im(tau) <= 0:
        raise DomainError("Im(tau) must be positive, got tau = {}".format(
            mpmath.nstr(tau, 10)))
    return tau


def _cutoff(prec):
    return mpmath.mpf(10) ** (-(prec + GUARD_DIGITS + 8))


def dedekind_eta(tau, prec=DEFAULT_PRECISION):
    """
    Dedekind eta q^(1/24) prod (1 - q^n) with q = exp(2 pi i tau).

    Parameters
    ----------
    tau : complex
        Point of the upper half plane (strings like '2i' accepted).

    Returns
    -------
    eta : mpmath.mpc
    """
    with mpmath.workdps(prec + GUARD_DIGITS):
        tau = _upper(tau, prec)
        q = mpmath.expjpi(2 * tau)
        cutoff = _cutoff(prec)
        product = mpmath.mpc(1)
        qn = q
        while abs(qn) >= cutoff:
            product *= 1 - qn
            qn *= q
        return mpmath.expjpi(tau / 12) * product


def eta_log_derivative(tau, order=1, prec=DEFAULT_PRECISION):
    """
    tau-derivatives of log eta from the Lambert series.

    order 1: i pi/12 - 2 pi i sum n q^n / (1 - q^n)
    order 2: 4 pi^2 sum n^2 q^n / (1 - q^n)^2
    """
    if order not in (1, 2):
        raise UsageError("order must be 1 or 2")
    with mpmath.workdps(prec + GUARD_DIGITS):
        tau = _upper(tau, prec)
        q = mpmath.expjpi(2 * tau)
        cutoff = _cutoff(prec)
        total = mpmath.mpc(0)
        qn, n = q, 1
        while n * n * abs(qn) >= cutoff or n < 3:
            if order == 1:
                total += n * qn / (1 - qn)
            else:
                total += n * n * qn / (1 - qn) ** 2
            qn *= q
            n += 1
        if order == 1:
            return 1j * mpmath.pi / 12 - 2j * mpmath.pi * total
        return 4 * mpmath.pi ** 2 * total


def eisenstein_e2(tau, prec=DEFAULT_PRECISION):
    """E2 = 1 - 24 sum sigma_1(n) q^n."""
    with mpmath.workdps(prec + GUARD_DIGITS):
        tau = _upper(tau, prec)
        q = mpmath.expjpi(2 * tau)
        cutoff = _cutoff(prec)
        total = mpmath.mpc(0)
        qn, n = q, 1
        while n * n * abs(qn) >= cutoff or n < 3:
            total += int(sympy.divisor_sigma(n, 1)) * qn
            qn *= q
            n += 1
        return 1 - 24 * total


def theta_constants(tau, derivative=0, prec=DEFAULT_PRECISION):
    """
    Theta constants (theta_2, theta_3, theta_4) or their tau-derivatives.

    The series are taken in the nome exp(i pi tau); a derivative of order k
    multiplies the term exp(i pi tau m) by (i pi m)^k.

    Parameters
    ----------
    tau : complex
        Point of the upper half plane.
    derivative : {0, 1, 2}, optional

    Returns
    -------
    thetas : tuple of mpmath.mpc
    """
    if derivative not in (0, 1, 2):
        raise UsageError("theta derivatives of order 0, 1, 2 are supported")
    with mpmath.workdps(prec + GUARD_DIGITS):
        tau = _upper(tau, prec)
        cutoff = _cutoff(prec)
        k = derivative

        def term(m):
            return (1j * mpmath.pi * m) ** k * mpmath.expjpi(tau * m)

        theta2 = mpmath.mpc(0)
        n = 0
        while True:
            t = term(mpmath.mpf(2 * n + 1) ** 2 / 4)
            theta2 += 2 * t
            n += 1
            if abs(t) < cutoff and n > 2:
                break

        theta3 = mpmath.mpc(1 if k == 0 else 0)
        theta4 = mpmath.mpc(1 if k == 0 else 0)
        n = 1
        while True:
            t = term(n * n)
            theta3 += 2 * t
            theta4 += 2 * t if n % 2 == 0 else -2 * t
            n += 1
            if abs(t) < cutoff and n > 2:
                break
        return theta2, theta3, theta4
