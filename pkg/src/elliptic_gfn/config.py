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
Defaults, environment handling and the run configuration shared by the
verification suites and the command line interface.
'''

import os
import re
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from elliptic_gfn.errors import UsageError

DEFAULT_PRECISION = 64
MIN_PRECISION = 32
PRECISION_ENV = "GFN_PRECISION"

# guard digits added inside evaluators on top of the requested precision
GUARD_DIGITS = 12

DEFAULT_S_GRID = ("1/4", "1/2", "3/4", "1", "3/2")

DEFAULT_TOLERANCES = {
    "e6-two-route": 1e-10,
    "wronskian": 1e-30,
    "roundtrip": 1e-50,
    "anomalies": 0.0,
    "coxeter-table": 0.0,
    "folding-table": 0.0,
    "getzler-a2": 1e-30,
    "getzler-d4": 1e-20,
    "halphen": 1e-20,
    "hessian-tau": 1e-30,
}

# Halphen convention of the D4^(1,1) oracle, as resolved by
# halphen.resolve_d4_convention: sign of 2 (log theta)', theta indices
# assigned to (u, v, w), and weight of w in the quartic coefficient.
D4_CONVENTION = {"sign": 1, "thetas": (2, 3, 4), "quartic_w": 4}

# u + v + w = ETA_SUM_MULTIPLE * (log eta)' for every theta assignment
ETA_SUM_MULTIPLE = 6

OUTPUT_FORMATS = ("json", "csv", "pretty")

_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*/\s*(\d+)\s*$")


def precision_from_env(default=DEFAULT_PRECISION):
    """
    Working precision in decimal digits, read from ``GFN_PRECISION``.

    Parameters
    ----------
    default : int, optional
        Value used when the variable is unset.

    Returns
    -------
    prec : int
    """
    raw = os.environ.get(PRECISION_ENV)
    if raw is None or raw.strip() == "":
        return default
    try:
        prec = int(raw)
    except ValueError:
        raise UsageError("{} must be an integer, got {!r}".format(
            PRECISION_ENV, raw))
    return check_precision(prec)


def check_precision(prec):
    if prec < MIN_PRECISION:
        raise UsageError("precision must be at least {} digits, got {}".format(
            MIN_PRECISION, prec))
    if prec < DEFAULT_PRECISION:
        warnings.warn("precision {} is below the recommended {} digits; "
                      "tight tolerances may fail".format(
                          prec, DEFAULT_PRECISION))
    return prec


def parse_rational(text):
    """
    Parse "3/4", "-2", "0.125" or "1e-3" into an exact Fraction.
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    text = str(text).strip()
    match = _RATIONAL.match(text)
    try:
        if match:
            return Fraction(int(match.group(1)), int(match.group(2)))
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError("not a rational number: {!r}".format(text))


def parse_complex(text, prec=DEFAULT_PRECISION):
    """
    Parse "2i", "0.5+2i", "-1/2+3/2i" or a real number into an mpc.
    """
    text = str(text).replace(" ", "").replace("j", "i")
    with mpmath.workdps(prec):
        if not text.endswith("i"):
            return mpmath.mpc(to_mp(parse_rational(text)))
        body = text[:-1]
        split = max(body.rfind("+"), body.rfind("-"))
        if split <= 0 or body[split - 1] in "eE":
            real, imag = "0", body
        else:
            real, imag = body[:split], body[split:]
        if imag in ("", "+"):
            imag = "1"
        elif imag == "-":
            imag = "-1"
        return mpmath.mpc(to_mp(parse_rational(real)),
                          to_mp(parse_rational(imag)))


def to_mp(value):
    """Convert a Fraction, int, str or mpmath number to an mpmath number."""
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    if isinstance(value, str):
        return to_mp(parse_rational(value))
    return mpmath.mpmathify(value)


@dataclass(frozen=True)
class RunConfig:
    """
    Settings of one command line / verification run.

    Parameters
    ----------
    precision : int
        Working precision in decimal digits (>= 32).
    model : str, optional
        Singularity model selector (e6t, e7t, e8t).
    group : str, optional
        Coxeter group label.
    system : str, optional
        Folding system label.
    s_grid : tuple of str
        Sample values of the marginal parameter.
    tolerances : dict
        Per-suite tolerance overrides.
    points : int
        Number of random points for scans.
    seed : int
        Seed of the random point generator.
    output : str
        One of json, csv, pretty.
    n_proc : int
        Worker processes for per-point suites.
    linearization : str, optional
        Path of an external linearization file (Ẽ7/Ẽ8 ring route).
    """
    precision: int = DEFAULT_PRECISION
    model: str = None
    group: str = None
    system: str = None
    s_grid: tuple = DEFAULT_S_GRID
    tolerances: dict = field(default_factory=dict)
    points: int = 5
    seed: int = 0
    output: str = "pretty"
    n_proc: int = 1
    linearization: str = None

    def __post_init__(self):
        check_precision(self.precision)
        if self.output not in OUTPUT_FORMATS:
            raise UsageError("unknown output format {!r}".format(self.output))
        for name, tol in self.tolerances.items():
            if not tol > 0:
                raise UsageError(
                    "tolerance of {} must be positive, got {}".format(
                        name, tol))
        if self.points < 1:
            raise UsageError("points must be positive")
        if self.n_proc < 1:
            raise UsageError("n_proc must be positive")
        object.__setattr__(self, "s_grid", tuple(self.s_grid))

    def tolerance(self, suite):
        return self.tolerances.get(suite, DEFAULT_TOLERANCES.get(suite))
