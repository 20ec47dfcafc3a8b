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
Simple elliptic singularity models and their Jacobi (Milnor) rings.

Every model carries its canonical polynomial, the deformation monomials
phi_1 ... phi_n (slot ``s_a`` multiplies ``phi_a``, the last slot is the
marginal parameter), the deformation weights and the discriminant in the
marginal parameter. Ring multiplication tables are computed exactly by
Groebner reduction and expressed in a chosen monomial basis.
'''

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import sympy

from elliptic_gfn.config import to_mp
from elliptic_gfn.errors import DegenerateRing, GfnError, UsageError
from elliptic_gfn.exact_algebra import (Jet, MonomialOrder, MultiPoly,
                                        as_rat, groebner_basis, mono_mul,
                                        normal_form)

logger = logging.getLogger(__name__)

MODEL_NAMES = ("E6t", "E7t", "E8t")

# marginal value at which the staircase basis of a model is read off
GENERIC_S = Fraction(1, 3)

_MODEL_DATA = {
    "E6t": {
        "variables": ("x", "y", "z"),
        "var_weights": ("1/3", "1/3", "1/3"),
        "canonical": {(3, 0, 0): 1, (0, 3, 0): 1, (0, 0, 3): 1},
        "deformations": ((0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 0),
                         (0, 1, 1), (1, 0, 1), (1, 1, 0), (1, 1, 1)),
        "discriminant": ("1", "0", "0", "1/27"),
        "staircase_basis": False,
    },
    "E7t": {
        "variables": ("x", "y"),
        "var_weights": ("1/4", "1/4"),
        "canonical": {(4, 0): 1, (0, 4): 1},
        "deformations": ((0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0),
                         (1, 2), (2, 1), (2, 2)),
        "discriminant": ("1", "0", "-1/4"),
        "staircase_basis": True,
    },
    "E8t": {
        "variables": ("x", "y"),
        "var_weights": ("1/6", "1/3"),
        "canonical": {(6, 0): 1, (0, 3): 1},
        "deformations": ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (3, 0),
                         (2, 1), (4, 0), (3, 1), (4, 1)),
        "discriminant": ("1", "0", "0", "4/27"),
        "staircase_basis": True,
    },
}


def canonical_name(name):
    """Map 'e6t', 'E6', 'e6' ... to the model label 'E6t'."""
    key = str(name).strip().lower()
    if key.endswith("t"):
        key = key[:-1]
    for label in MODEL_NAMES:
        if label[:-1].lower() == key:
            return label
    raise UsageError("unknown singularity model {!r}, choose one of {}".format(
        name, ", ".join(MODEL_NAMES)))


@dataclass(frozen=True)
class SingularityModel:
    """
    Static description of one simple elliptic singularity.

    Parameters
    ----------
    name : str
        E6t, E7t or E8t.
    variables : tuple of str
        Ring variable names.
    var_weights : tuple of Fraction
        Weights of the ring variables (the canonical form has weight 1).
    canonical : MultiPoly
        Undeformed polynomial.
    deformations : tuple of tuple
        Exponents of phi_1 ... phi_n.
    weights : tuple of Fraction
        Deformation weights d_a = 1 - wdeg(phi_a).
    spectrum : tuple of Fraction
        mu_a = q_a - d/2 with q_a = 1 - d_a and d = 1.
    basis : tuple of tuple
        Ring basis used by default for multiplication tables.
    discriminant : tuple of Fraction
        Coefficients of the discriminant, ascending powers of s.
    """
    name: str
    variables: tuple
    var_weights: tuple
    canonical: MultiPoly
    deformations: tuple
    weights: tuple
    spectrum: tuple
    basis: tuple
    discriminant: tuple
    d_charge: Fraction = Fraction(1)

    @property
    def n(self):
        return len(self.deformations)

    @property
    def nvars(self):
        return len(self.variables)

    @property
    def marginal_index(self):
        return self.n

    @property
    def slot_names(self):
        return tuple("s{}".format(a) for a in range(1, self.n + 1))

    def pair(self, mu):
        """The dual index mu* = n + 1 - mu."""
        if not 1 <= mu <= self.n:
            raise UsageError("index {} outside 1..{}".format(mu, self.n))
        return self.n + 1 - mu

    def wdeg(self, exps):
        return sum(w * e for w, e in zip(self.var_weights, exps))

    def discriminant_at(self, s):
        """Evaluate the discriminant at s (exact for rationals)."""
        exact = isinstance(s, (int, Fraction))
        total = 0
        for coeff in reversed(self.discriminant):
            total = total * s + (coeff if exact else to_mp(coeff))
        return total

    def monomial_name(self, exps):
        parts = []
        for var, e in zip(self.variables, exps):
            if e == 1:
                parts.append(var)
            elif e > 1:
                parts.append("{}^{}".format(var, e))
        return "*".join(parts) or "1"


def _check_model(model):
    for exps in model.canonical.terms:
        if model.wdeg(exps) != 1:
            raise GfnError("{}: canonical term {} is not of weight 1".format(
                model.name, exps))
    d = model.weights
    if d[0] != 1 or d[-1] != 0:
        raise GfnError("{}: expected d^1 = 1 and d^n = 0".format(model.name))
    for mu in range(1, model.n + 1):
        if d[mu - 1] + d[model.pair(mu) - 1] != 1:
            raise GfnError("{}: weights do not pair at index {}".format(
                model.name, mu))
        if model.spectrum[mu - 1] + model.spectrum[model.pair(mu) - 1] != 0:
            raise GfnError("{}: spectrum is not antisymmetric".format(
                model.name))
    if len(model.basis) != model.n:
        raise GfnError("{}: basis has {} elements, expected {}".format(
            model.name, len(model.basis), model.n))
    degrees = [model.wdeg(m) for m in model.basis]
    if degrees != sorted(degrees) or [1 - x for x in degrees] != list(d):
        raise GfnError("{}: basis degrees do not match the weights".format(
            model.name))


@lru_cache(maxsize=None)
def build_model(name):
    """
    Build and check the singularity model ``name``.

    Parameters
    ----------
    name : str
        One of E6t, E7t, E8t (case insensitive, trailing 't' optional).

    Returns
    -------
    model : SingularityModel
    """
    label = canonical_name(name)
    data = _MODEL_DATA[label]
    var_weights = tuple(as_rat(w) for w in data["var_weights"])
    nvars = len(data["variables"])
    canonical = MultiPoly(nvars, data["canonical"])
    deformations = tuple(tuple(m) for m in data["deformations"])

    def wdeg(exps):
        return sum(w * e for w, e in zip(var_weights, exps))

    weights = tuple(1 - wdeg(m) for m in deformations)
    spectrum = tuple((1 - d) - Fraction(1, 2) for d in weights)
    discriminant = tuple(as_rat(c) for c in data["discriminant"])

    model = SingularityModel(
        name=label, variables=data["variables"], var_weights=var_weights,
        canonical=canonical, deformations=deformations, weights=weights,
        spectrum=spectrum, basis=deformations, discriminant=discriminant)
    if data["staircase_basis"]:
        model = SingularityModel(
            name=label, variables=data["variables"], var_weights=var_weights,
            canonical=canonical, deformations=deformations, weights=weights,
            spectrum=spectrum, basis=staircase_basis(model),
            discriminant=discriminant)
    _check_model(model)
    logger.debug("built model %s with basis %s", label,
                 [model.monomial_name(m) for m in model.basis])
    return model


def staircase_basis(model, s=GENERIC_S):
    """
    Standard monomials of the Jacobian ideal at marginal value ``s`` (other
    deformations zero), ordered by weighted degree then graded reverse lex.
    """
    generators = jacobian_ideal(model, {model.marginal_index: s})
    gb = groebner_basis(generators)
    order = MonomialOrder.grevlex()
    monomials = gb.standard_monomials(limit=50 * model.n)
    return tuple(sorted(monomials,
                        key=lambda m: (model.wdeg(m), order.key(m))))


def _slot_values(model, s_assign=None, jet=None):
    values = [Jet()] * model.n
    for key, value in (s_assign or {}).items():
        values[_slot_index(model, key) - 1] = Jet.coerce(
            value if isinstance(value, Jet) else as_rat(value))
    if jet is not None:
        a = _slot_index(model, jet) - 1
        values[a] = values[a] + Jet.epsilon()
    return tuple(values)


def marginal_value(model, s_assign=None):
    """Value of the marginal slot in ``s_assign`` (0 when absent)."""
    return _slot_values(model, s_assign)[model.marginal_index - 1].value


def _slot_index(model, key):
    if isinstance(key, int):
        index = key
    else:
        text = str(key).strip().lower()
        if text == "s":
            return model.marginal_index
        if not text.startswith("s") or not text[1:].isdigit():
            raise UsageError("unknown deformation slot {!r}".format(key))
        index = int(text[1:])
    if not 1 <= index <= model.n:
        raise UsageError("{} has deformation slots s1..s{}, got {!r}".format(
            model.name, model.n, key))
    return index


def superpotential(model, s_assign=None, jet=None):
    """
    Deformed polynomial W = W_0 + sum_a s_a phi_a.

    Parameters
    ----------
    model : SingularityModel
    s_assign : dict, optional
        Slot -> value, slots given as 's3', 3 or 's' (the marginal one).
        Values may be rationals or Jet. Missing slots are 0.
    jet : str or int, optional
        Slot that additionally receives the nilpotent direction.
    """
    values = _slot_values(model, s_assign, jet)
    W = model.canonical
    for phi, value in zip(model.deformations, values):
        if value:
            W = W + MultiPoly.monomial(phi, value)
    return W


def jacobian_ideal(model, s_assign=None, jet=None):
    W = superpotential(model, s_assign, jet)
    return [W.diff(i) for i in range(model.nvars)]


class _QuotientRing:
    """Jacobi ring at fixed slot values with coordinates in a given basis."""

    def __init__(self, model, values, basis):
        self.model = model
        self.basis = basis
        W = model.canonical
        for phi, value in zip(model.deformations, values):
            if value:
                W = W + MultiPoly.monomial(phi, value)
        generators = [W.diff(i) for i in range(model.nvars)]
        self.gb = groebner_basis(generators)
        self.jet = self.gb.jet
        width = 2 if self.jet else 1
        staircase = self.gb.standard_monomials(limit=50 * model.n)
        if len(staircase) != width * len(basis):
            raise DegenerateRing(
                "{}: quotient has dimension {}, expected {}".format(
                    model.name, len(staircase) // width, len(basis)))
        self._index = {m: i for i, m in enumerate(staircase)}

        columns = [self._vector(self.reduce(MultiPoly.monomial(b)))
                   for b in basis]
        if self.jet:
            eps = Jet.epsilon()
            columns += [self._vector(self.reduce(MultiPoly.monomial(b, eps)))
                        for b in basis]
        matrix = sympy.Matrix(columns).T
        if matrix.det() == 0:
            raise DegenerateRing(
                "{}: basis {} is not independent in the quotient".format(
                    model.name, [model.monomial_name(b) for b in basis]))
        self._inverse = matrix.inv()
        logger.debug("%s quotient: %d basis polynomials, dimension %d, "
                     "jet=%s", model.name, len(self.gb), len(basis), self.jet)

    def reduce(self, poly):
        return normal_form(poly, self.gb)

    def _vector(self, nf):
        vec = [sympy.Integer(0)] * len(self._index)
        for m, c in nf.terms.items():
            parts = [(m + (0,), c.value), (m + (1,), c.slope)] if self.jet \
                else [(m, c.value)]
            for key, value in parts:
                if not value:
                    continue
                if key not in self._index:
                    raise GfnError("normal form term {} outside the "
                                   "staircase".format(key))
                vec[self._index[key]] = sympy.Rational(value.numerator,
                                                       value.denominator)
        return vec

    def coords(self, poly):
        """Coordinates of ``poly`` in the basis, as Jets."""
        x = self._inverse * sympy.Matrix(self._vector(self.reduce(poly)))
        n = len(self.basis)
        values = [_to_fraction(x[i]) for i in range(n)]
        if not self.jet:
            return [Jet(v) for v in values]
        return [Jet(values[i], _to_fraction(x[n + i])) for i in range(n)]


def _to_fraction(r):
    r = sympy.Rational(r)
    return Fraction(int(r.p), int(r.q))


@lru_cache(maxsize=256)
def _quotient(name, values, basis):
    return _QuotientRing(build_model(name), values, basis)


@dataclass(frozen=True)
class RingTable:
    """
    Structure constants c_ab^c of a Jacobi ring in a monomial basis.

    ``c[a][b][k]`` holds c_{ab}^{k} with zero based indices; use
    :meth:`coefficient` for the one based convention.
    """
    model: str
    variables: tuple
    basis: tuple
    c: tuple
    point: tuple

    @property
    def n(self):
        return len(self.basis)

    @property
    def has_jet(self):
        return any(v.slope for v in self.point)

    def coefficient(self, a, b, c):
        return self.c[a - 1][b - 1][c - 1]

    def value(self, a, b, c):
        return self.coefficient(a, b, c).value

    def slope(self, a, b, c):
        return self.coefficient(a, b, c).slope

    def matrix(self, a):
        """Multiplication by phi_a: entry [k][b] = c_ab^k."""
        row = self.c[a - 1]
        return [[row[b][k] for b in range(self.n)] for k in range(self.n)]

    def trace_vector(self):
        """T_a = sum_p c^p_{pa}, the trace of multiplication by phi_a."""
        return [sum((self.c[p][a][p] for p in range(self.n)), Jet())
                for a in range(self.n)]

    def unit_index(self):
        zero = (0,) * len(self.variables)
        return self.basis.index(zero) + 1

    def is_commutative(self):
        return all(self.c[a][b] == self.c[b][a]
                   for a in range(self.n) for b in range(self.n))

    def is_unital(self):
        u = self.unit_index() - 1
        return all(self.c[u][b][k] == (Jet(1) if b == k else Jet())
                   for b in range(self.n) for k in range(self.n))

    def is_associative(self):
        n = self.n
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    for f in range(n):
                        left = sum((self.c[a][b][e] * self.c[e][c][f]
                                    for e in range(n)), Jet())
                        right = sum((self.c[b][c][e] * self.c[a][e][f]
                                     for e in range(n)), Jet())
                        if left != right:
                            return False
        return True

    def to_json(self):
        def text(x):
            return str(x) if x.denominator != 1 else str(x.numerator)

        out = {
            "model": self.model,
            "variables": list(self.variables),
            "basis": [list(m) for m in self.basis],
            "point": [{"value": text(v.value), "slope": text(v.slope)}
                      for v in self.point],
            "c": [[[text(x.value) for x in col] for col in row]
                  for row in self.c],
        }
        if self.has_jet:
            out["c_slope"] = [[[text(x.slope) for x in col] for col in row]
                              for row in self.c]
        return out


def _check_point(model, values):
    jets = [a for a, v in enumerate(values, start=1) if v.slope]
    if len(jets) > 1:
        raise UsageError("at most one jet direction, got slots {}".format(
            jets))
    if jets and jets[0] == model.marginal_index:
        raise UsageError("the jet direction must be a non-marginal slot")
    s = values[model.marginal_index - 1].value
    if model.discriminant_at(s) == 0:
        raise DegenerateRing(
            "{}: discriminant vanishes at s = {}, the ring multiplication "
            "breaks down".format(model.name, s))


def multiplication_table(model, s_assign=None, jet=None, basis=None):
    """
    Exact multiplication table of the Jacobi ring.

    Parameters
    ----------
    model : SingularityModel or str
    s_assign : dict, optional
        Slot values, see :func:`superpotential`.
    jet : str or int, optional
        Non-marginal slot carrying the first order perturbation.
    basis : sequence of tuple, optional
        Monomial basis; defaults to ``model.basis``. Pass
        ``model.deformations`` for the deformation basis.

    Returns
    -------
    table : RingTable

    Raises
    ------
    DegenerateRing
        At discriminant roots or when ``basis`` does not span the quotient.
    """
    if not isinstance(model, SingularityModel):
        model = build_model(model)
    values = _slot_values(model, s_assign, jet)
    _check_point(model, values)
    basis = tuple(tuple(m) for m in (basis or model.basis))
    if len(basis) != model.n:
        raise UsageError("basis needs {} monomials, got {}".format(
            model.n, len(basis)))
    ring = _quotient(model.name, values, basis)

    n = len(basis)
    c = [[None] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            product = MultiPoly.monomial(mono_mul(basis[a], basis[b]))
            c[a][b] = c[b][a] = tuple(ring.coords(product))
    return RingTable(model=model.name, variables=model.variables,
                     basis=basis, c=tuple(tuple(row) for row in c),
                     point=values)


def quotient_dimension(model, s_assign=None):
    """
    Number of standard monomials of the Jacobian ideal.

    No discriminant check is made; an infinite staircase raises
    DegenerateRing.
    """
    if not isinstance(model, SingularityModel):
        model = build_model(model)
    gb = groebner_basis(jacobian_ideal(model, s_assign))
    return len(gb.standard_monomials(limit=50 * model.n))


def hessian_determinant(W):
    """det(d^2 W / dx_i dx_j) as a polynomial, by Laplace expansion."""
    rows = [[W.diff(i).diff(j) for j in range(W.nvars)]
            for i in range(W.nvars)]
    return _laplace(rows, W.nvars)


def _laplace(rows, nvars):
    if len(rows) == 1:
        return rows[0][0]
    total = MultiPoly.zero(nvars)
    for j, entry in enumerate(rows[0]):
        if entry.is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in rows[1:]]
        term = entry * _laplace(minor, nvars)
        total = total + term if j % 2 == 0 else total - term
    return total


def multiplication_det(model, element, s_assign=None):
    """
    Determinant of multiplication by ``element`` in the Jacobi ring.

    Returns
    -------
    det : Fraction
    """
    if not isinstance(model, SingularityModel):
        model = build_model(model)
    values = _slot_values(model, s_assign)
    if any(v.slope for v in values):
        raise UsageError("multiplication determinants need a point without "
                         "jet directions")
    _check_point(model, values)
    ring = _quotient(model.name, values, model.basis)
    columns = []
    for b in model.basis:
        coords = ring.coords(element * MultiPoly.monomial(b))
        columns.append([sympy.Rational(x.value.numerator, x.value.denominator)
                        for x in coords])
    return _to_fraction(sympy.Matrix(columns).T.det())


def hessian_mult_det(model, s_assign=None):
    """
    Determinant of multiplication by the Hessian class.

    Parameters
    ----------
    model : SingularityModel or str
    s_assign : dict, optional
        Slot values (rationals only).

    Returns
    -------
    det : Fraction
    """
    if not isinstance(model, SingularityModel):
        model = build_model(model)
    W = superpotential(model, s_assign)
    return multiplication_det(model, hessian_determinant(W), s_assign)
