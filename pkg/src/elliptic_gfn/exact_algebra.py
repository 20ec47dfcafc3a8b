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
Exact multivariate polynomials over the rationals with first order jet
coefficients, monomial orders, Buchberger Groebner bases and normal forms.

Coefficients are Jet values ``value + slope*eps`` with ``eps**2 = 0``. For
Groebner computations the nilpotent is adjoined as an extra (last) variable
together with the generator ``eps**2``, so the engine itself only ever sees
field coefficients.
'''

import json
import logging
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from elliptic_gfn.errors import (DegenerateRing, GfnError, GroebnerBudgetError,
                                 UsageError)

logger = logging.getLogger(__name__)

Rat = Fraction

DEFAULT_STEP_BUDGET = 5000


def as_rat(value):
    """Coerce int, Fraction or a rational string to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise UsageError("cannot use {!r} as an exact rational".format(value))


@dataclass(frozen=True)
class Jet:
    """
    First order jet ``value + slope*eps`` with ``eps**2 = 0``.

    Parameters
    ----------
    value : Fraction
    slope : Fraction
    """
    value: Fraction = Fraction(0)
    slope: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "value", as_rat(self.value))
        object.__setattr__(self, "slope", as_rat(self.slope))

    @classmethod
    def epsilon(cls):
        return cls(0, 1)

    @classmethod
    def coerce(cls, other):
        if isinstance(other, Jet):
            return other
        return cls(as_rat(other), 0)

    def is_zero(self):
        return self.value == 0 and self.slope == 0

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other):
        other = _scalar(other)
        if other is None:
            return NotImplemented
        return Jet(self.value + other.value, self.slope + other.slope)

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.value, -self.slope)

    def __sub__(self, other):
        other = _scalar(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _scalar(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _scalar(other)
        if other is None:
            return NotImplemented
        return Jet(self.value * other.value,
                   self.value * other.slope + self.slope * other.value)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _scalar(other)
        if other is None:
            return NotImplemented
        if other.value == 0:
            raise ZeroDivisionError("jet with zero value is not invertible")
        inv = Jet(1 / other.value, -other.slope / other.value**2)
        return self * inv

    def __repr__(self):
        if self.slope == 0:
            return "Jet({})".format(self.value)
        return "Jet({} + {}*eps)".format(self.value, self.slope)


def _scalar(other):
    if isinstance(other, Jet):
        return other
    if isinstance(other, (int, Fraction)):
        return Jet(other)
    return None


ZERO = Jet()
ONE = Jet(1)


# -- monomials ---------------------------------------------------------------

def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a, b):
    """a / b as a monomial, or None when b does not divide a."""
    q = tuple(x - y for x, y in zip(a, b))
    if any(e < 0 for e in q):
        return None
    return q


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_divides(b, a):
    return all(y <= x for x, y in zip(a, b))


class MonomialOrder:
    """
    Monomial order given as a sort key (bigger key = bigger monomial).

    Parameters
    ----------
    kind : {'grevlex', 'grlex', 'weighted'}
        Graded reverse lexicographic, graded lexicographic or weighted
        graded (ties broken by graded reverse lexicographic).
    weights : sequence of Fraction, optional
        Positive variable weights, required for ``kind='weighted'``.
    """

    KINDS = ("grevlex", "grlex", "weighted")

    def __init__(self, kind="grevlex", weights=None):
        if kind not in self.KINDS:
            raise UsageError("unknown monomial order {!r}".format(kind))
        if kind == "weighted":
            if weights is None or any(as_rat(w) <= 0 for w in weights):
                raise UsageError("weighted order needs positive weights")
            weights = tuple(as_rat(w) for w in weights)
        self.kind = kind
        self.weights = weights

    @classmethod
    def grevlex(cls):
        return cls("grevlex")

    @classmethod
    def grlex(cls):
        return cls("grlex")

    @classmethod
    def weighted(cls, weights):
        return cls("weighted", weights)

    def key(self, m):
        if self.kind == "grlex":
            return (sum(m), m)
        tail = (sum(m), tuple(-e for e in reversed(m)))
        if self.kind == "grevlex":
            return tail
        if len(m) != len(self.weights):
            raise UsageError("weighted order has {} weights, monomial has {} "
                             "variables".format(len(self.weights), len(m)))
        return (sum(w * e for w, e in zip(self.weights, m)),) + tail

    def extended(self):
        """The order on one extra trailing variable (the nilpotent)."""
        if self.kind != "weighted":
            return self
        return MonomialOrder("weighted", self.weights + (min(self.weights),))

    def __eq__(self, other):
        return (isinstance(other, MonomialOrder) and self.kind == other.kind
                and self.weights == other.weights)

    def __hash__(self):
        return hash((self.kind, self.weights))

    def __repr__(self):
        if self.weights is None:
            return "MonomialOrder({!r})".format(self.kind)
        return "MonomialOrder({!r}, {})".format(
            self.kind, [str(w) for w in self.weights])


# -- polynomials -------------------------------------------------------------

class MultiPoly:
    """
    Immutable polynomial in ``nvars`` variables with Jet coefficients.

    Parameters
    ----------
    nvars : int
        Number of variables.
    terms : dict, optional
        Map exponent tuple -> coefficient (Jet, Fraction, int or str).
        Zero coefficients are dropped.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        clean = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise UsageError("monomial {} does not fit {} "
                                 "variables".format(exps, nvars))
            coeff = Jet.coerce(coeff)
            if coeff:
                clean[exps] = clean.get(exps, ZERO) + coeff
                if not clean[exps]:
                    del clean[exps]
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # constructors
    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def constant(cls, nvars, coeff):
        return cls(nvars, {(0,) * nvars: coeff})

    @classmethod
    def variable(cls, nvars, index):
        exps = [0] * nvars
        exps[index] = 1
        return cls(nvars, {tuple(exps): 1})

    @classmethod
    def monomial(cls, exps, coeff=1):
        return cls(len(exps), {tuple(exps): coeff})

    # queries
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def has_jet(self):
        return any(c.slope != 0 for c in self.terms.values())

    def total_degree(self):
        return max((sum(m) for m in self.terms), default=-1)

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), ZERO)

    def value_part(self):
        return MultiPoly(self.nvars,
                         {m: c.value for m, c in self.terms.items()})

    def slope_part(self):
        return MultiPoly(self.nvars,
                         {m: c.slope for m, c in self.terms.items()})

    def leading_term(self, order):
        if not self.terms:
            raise UsageError("the zero polynomial has no leading term")
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    # arithmetic
    def _check(self, other):
        if not isinstance(other, MultiPoly):
            return MultiPoly.constant(self.nvars, other)
        if other.nvars != self.nvars:
            raise UsageError("variable arity mismatch: {} vs {}".format(
                self.nvars, other.nvars))
        return other

    def __add__(self, other):
        other = self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, ZERO) + c
        return MultiPoly(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = Jet.coerce(other)
            return MultiPoly(self.nvars,
                             {m: a * c for m, a in self.terms.items()})
        other = self._check(other)
        terms = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = mono_mul(ma, mb)
                terms[m] = terms.get(m, ZERO) + ca * cb
        return MultiPoly(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise UsageError("negative powers are not polynomials")
        result = MultiPoly.constant(self.nvars, 1)
        for _ in range(k):
            result = result * self
        return result

    def diff(self, index):
        """Partial derivative with respect to variable ``index``."""
        terms = {}
        for m, c in self.terms.items():
            if m[index] == 0:
                continue
            dm = list(m)
            dm[index] -= 1
            terms[tuple(dm)] = c * m[index]
        return MultiPoly(self.nvars, terms)

    def evaluate(self, point):
        """
        Evaluate at ``point``.

        Rational points give an exact Fraction, anything else is evaluated
        in mpmath. Only polynomials without jet part can be evaluated.
        """
        if len(point) != self.nvars:
            raise UsageError("point has {} coordinates, polynomial {}".format(
                len(point), self.nvars))
        if self.has_jet():
            raise UsageError("cannot evaluate a polynomial with jet part")
        exact = all(isinstance(x, (int, Fraction)) for x in point)
        total = Fraction(0) if exact else mpmath.mpf(0)
        for m, c in self.terms.items():
            term = c.value if exact else \
                mpmath.mpf(c.value.numerator) / c.value.denominator
            for x, e in zip(point, m):
                if e:
                    term = term * x**e
            total = total + term
        return total

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "MultiPoly({}, 0)".format(self.nvars)
        order = MonomialOrder.grevlex()
        parts = []
        for m in sorted(self.terms, key=order.key, reverse=True):
            parts.append("{}*{}".format(self.terms[m], list(m)))
        return "MultiPoly({}, {})".format(self.nvars, " + ".join(parts))

    # serialization
    def to_json_terms(self):
        order = MonomialOrder.grevlex()
        out = []
        for m in sorted(self.terms, key=order.key, reverse=True):
            c = self.terms[m]
            out.append({"exps": list(m),
                        "num": str(c.value.numerator),
                        "den": str(c.value.denominator),
                        "slope_num": str(c.slope.numerator),
                        "slope_den": str(c.slope.denominator)})
        return out

    @classmethod
    def from_json_terms(cls, terms, nvars=None):
        if nvars is None:
            if not terms:
                raise UsageError("empty term list needs an explicit arity")
            nvars = len(terms[0]["exps"])
        coeffs = {}
        for term in terms:
            value = Fraction(int(term["num"]), int(term.get("den", "1")))
            slope = Fraction(int(term.get("slope_num", "0")),
                             int(term.get("slope_den", "1")))
            coeffs[tuple(term["exps"])] = Jet(value, slope)
        return cls(nvars, coeffs)


def poly_mul(a, b):
    """Exact product of two polynomials of equal arity, eps**2 truncated."""
    if a.nvars != b.nvars:
        raise UsageError("variable arity mismatch: {} vs {}".format(
            a.nvars, b.nvars))
    return a * b


def dumps(poly):
    return json.dumps(poly.to_json_terms())


def loads(text, nvars=None):
    return MultiPoly.from_json_terms(json.loads(text), nvars=nvars)


# -- Groebner engine ---------------------------------------------------------
# Internally polynomials are plain dicts exponent tuple -> Fraction.

def _lift(poly, jet):
    """MultiPoly -> dict, the nilpotent becoming a trailing variable."""
    out = {}
    for m, c in poly.terms.items():
        if jet:
            if c.value:
                out[m + (0,)] = c.value
            if c.slope:
                out[m + (1,)] = c.slope
        else:
            if c.slope:
                raise UsageError("jet coefficients need an eps-extended basis")
            out[m] = c.value
    return out


def _fold(d, nvars, jet):
    """dict -> MultiPoly, folding the trailing nilpotent variable back."""
    if not jet:
        return MultiPoly(nvars, d)
    terms = {}
    for m, c in d.items():
        base, e = m[:-1], m[-1]
        if e == 0:
            terms[base] = terms.get(base, ZERO) + Jet(c, 0)
        elif e == 1:
            terms[base] = terms.get(base, ZERO) + Jet(0, c)
        else:
            raise GfnError("eps power {} survived reduction".format(e))
    return MultiPoly(nvars, terms)


def _lead(d, key):
    m = max(d, key=key)
    return m, d[m]


def _monic(d, key):
    _, c = _lead(d, key)
    return {m: v / c for m, v in d.items()}


def _sub_mul(p, coeff, shift, g):
    """p - coeff * x**shift * g, in place."""
    for gm, gc in g.items():
        m = mono_mul(gm, shift)
        v = p.get(m, 0) - coeff * gc
        if v:
            p[m] = v
        else:
            p.pop(m, None)


def _reduce(f, G, key):
    """Full remainder of f on division by the (monic-led) polynomials G."""
    p = dict(f)
    r = {}
    while p:
        m, c = _lead(p, key)
        for g, lm in G:
            shift = mono_div(m, lm)
            if shift is not None:
                _sub_mul(p, c / g[lm], shift, g)
                break
        else:
            r[m] = c
            del p[m]
    return r


def _spoly(f, g, lmf, lmg):
    lcm = mono_lcm(lmf, lmg)
    s = {}
    for m, c in f.items():
        s[mono_mul(m, mono_div(lcm, lmf))] = c / f[lmf]
    _sub_mul(s, 1 / g[lmg], mono_div(lcm, lmg), g)
    return s


def _update(G, P, f, key):
    """Gebauer-Moeller pair update after appending f to G."""
    lmf = _lead(f, key)[0]
    lmG = [lm for _, lm in G]
    P = {(i, j) for (i, j) in P
         if not mono_divides(lmf, mono_lcm(lmG[i], lmG[j]))
         or mono_lcm(lmG[i], lmG[j]) == mono_lcm(lmG[i], lmf)
         or mono_lcm(lmG[i], lmG[j]) == mono_lcm(lmG[j], lmf)}
    lcm_dict = {}
    for i, lm in enumerate(lmG):
        lcm_dict.setdefault(mono_lcm(lm, lmf), []).append(i)
    minimal = []
    for L in sorted(lcm_dict, key=key):
        if all(not mono_divides(L_, L) for L_ in minimal):
            minimal.append(L)
    new = set()
    for L in minimal:
        # Buchberger's product criterion
        if not any(mono_lcm(lmG[i], lmf) == mono_mul(lmG[i], lmf)
                   for i in lcm_dict[L]):
            new.add((min(lcm_dict[L]), len(G)))
    return G + [(f, lmf)], P | new


def _select(G, P, key):
    """Normal selection strategy: pair with the smallest lcm."""
    return min(P, key=lambda p: (key(mono_lcm(G[p[0]][1], G[p[1]][1])), p))


def _minimalize(G, key):
    Gmin = []
    for f, lm in sorted(G, key=lambda h: key(h[1])):
        if all(not mono_divides(lm_, lm) for _, lm_ in Gmin):
            Gmin.append((f, lm))
    return Gmin


def _interreduce(G, key):
    Gred = []
    for i, (f, lm) in enumerate(G):
        g = _reduce(f, G[:i] + G[i + 1:], key)
        Gred.append((_monic(g, key), lm))
    return Gred


@dataclass(frozen=True)
class GroebnerBasis:
    """
    Reduced Groebner basis.

    Parameters
    ----------
    polys : tuple of MultiPoly
        Monic basis polynomials. When ``jet`` is set they live in
        ``nvars + 1`` variables, the last one being the nilpotent.
    order : MonomialOrder
        Order on the caller's variables.
    nvars : int
        Number of the caller's ring variables.
    jet : bool
        Whether the nilpotent was adjoined.
    """
    polys: tuple
    order: MonomialOrder
    nvars: int
    jet: bool = False

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def __getitem__(self, i):
        return self.polys[i]

    @property
    def engine_order(self):
        return self.order.extended() if self.jet else self.order

    def leading_monomials(self):
        return [p.leading_term(self.engine_order)[0] for p in self.polys
                if p.terms]

    def _pairs(self):
        key = self.engine_order.key
        out = []
        for p in self.polys:
            d = {m: c.value for m, c in p.terms.items()}
            out.append((d, _lead(d, key)[0]))
        return out

    def standard_monomials(self, limit=10000):
        """
        Monomials not divisible by any leading monomial (the staircase
        complement), in the engine variables.

        Raises
        ------
        DegenerateRing
            When the complement is infinite (more than ``limit`` found).
        """
        leads = self.leading_monomials()
        width = self.nvars + 1 if self.jet else self.nvars
        start = (0,) * width
        if any(mono_divides(lm, start) for lm in leads):
            return []
        seen = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for m in frontier:
                for i in range(width):
                    up = list(m)
                    up[i] += 1
                    up = tuple(up)
                    if up in seen or any(mono_divides(lm, up) for lm in leads):
                        continue
                    seen.add(up)
                    nxt.append(up)
                    if len(seen) > limit:
                        raise DegenerateRing(
                            "quotient is not finite dimensional (more than {} "
                            "standard monomials)".format(limit))
            frontier = nxt
        return sorted(seen, key=self.engine_order.key)


def groebner_basis(generators, order=None, budget=DEFAULT_STEP_BUDGET):
    """
    Reduced Groebner basis of the ideal spanned by ``generators``.

    Generators with jet coefficients are handled by adjoining the nilpotent
    as a trailing variable and appending its square to the generators.

    Parameters
    ----------
    generators : list of MultiPoly
        Nonzero generators of equal arity.
    order : MonomialOrder, optional
        Defaults to graded reverse lexicographic.
    budget : int, optional
        Maximum number of S-polynomial reductions.

    Returns
    -------
    basis : GroebnerBasis
    """
    generators = list(generators)
    if not generators:
        raise UsageError("need at least one generator")
    nvars = generators[0].nvars
    for g in generators:
        if g.nvars != nvars:
            raise UsageError("variable arity mismatch in generators")
        if g.is_zero():
            raise UsageError("generators must be nonzero")
    order = order or MonomialOrder.grevlex()
    jet = any(g.has_jet() for g in generators)
    engine_order = order.extended() if jet else order
    key = engine_order.key

    F = [_lift(g, jet) for g in generators]
    if jet:
        F.append({(0,) * nvars + (2,): Fraction(1)})

    G, P = [], set()
    for f in F:
        G, P = _update(G, P, _monic(f, key), key)
    steps = 0
    while P:
        if steps >= budget:
            raise GroebnerBudgetError(
                "Buchberger step budget of {} exhausted with {} pairs "
                "left".format(budget, len(P)),
                basis_so_far=[_fold_plain(f, jet, nvars) for f, _ in G])
        i, j = _select(G, P, key)
        P.remove((i, j))
        s = _spoly(G[i][0], G[j][0], G[i][1], G[j][1])
        r = _reduce(s, G, key)
        steps += 1
        if r:
            G, P = _update(G, P, _monic(r, key), key)
    logger.debug("Buchberger: %d reductions, %d polynomials before "
                 "minimalization", steps, len(G))
    G = _interreduce(_minimalize(G, key), key)
    width = nvars + 1 if jet else nvars
    basis = GroebnerBasis(
        polys=tuple(MultiPoly(width, f) for f, _ in G),
        order=order, nvars=nvars, jet=jet)
    for f in F:
        if _reduce(f, G, key):
            raise GfnError("generator not in the computed ideal: {}".format(f))
    return basis


def _fold_plain(d, jet, nvars):
    return MultiPoly(nvars + 1 if jet else nvars, d)


def normal_form(p, basis, order=None):
    """
    Remainder of ``p`` on division by a Groebner basis.

    Parameters
    ----------
    p : MultiPoly
        Polynomial in the caller's variables (jet coefficients allowed when
        the basis carries the nilpotent).
    basis : GroebnerBasis or list of MultiPoly
        A plain list is taken to be a Groebner basis for ``order``.
    order : MonomialOrder, optional
        Only used with a plain list; defaults to graded reverse lex.

    Returns
    -------
    r : MultiPoly
        No term of ``r`` is divisible by a leading monomial of the basis.
    """
    if isinstance(basis, GroebnerBasis):
        jet, nvars = basis.jet, basis.nvars
        engine_order = basis.engine_order
        G = basis._pairs()
    else:
        order = order or MonomialOrder.grevlex()
        basis = list(basis)
        jet = False
        nvars = p.nvars
        engine_order = order
        G = []
        for g in basis:
            if g.nvars != nvars:
                raise UsageError("variable arity mismatch: {} vs {}".format(
                    g.nvars, nvars))
            d = _lift(g, False)
            G.append((d, _lead(d, order.key)[0]))
    if p.nvars != nvars:
        raise UsageError("variable arity mismatch: {} vs {}".format(
            p.nvars, nvars))
    r = _reduce(_lift(p, jet), G, engine_order.key)
    return _fold(r, nvars, jet)

