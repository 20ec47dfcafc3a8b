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
G-functions: closed forms for the elliptic models, the ring route for dG/dt,
scaling anomalies, Virasoro derivatives, the Coxeter and folding tables and
the inversion symmetry.
'''

import logging
import re
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from elliptic_gfn.config import (DEFAULT_PRECISION, GUARD_DIGITS,
                                 parse_complex, parse_rational, to_mp)
from elliptic_gfn.errors import UsageError
from elliptic_gfn.exact_algebra import as_rat
from elliptic_gfn.flat_coords import ds_dt, linearization, s_of_t
from elliptic_gfn.milnor_ring import (SingularityModel, build_model,
                                      hessian_mult_det, marginal_value,
                                      multiplication_table)
from elliptic_gfn.special_functions import dedekind_eta

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SpectrumData:
    """
    Spectrum of a Frobenius manifold.

    Parameters
    ----------
    n : int
    d_charge : Fraction
    q : tuple of Fraction
        q_a = 1 - d_a.
    mu : tuple of Fraction
        mu_a = q_a - d/2.
    """
    n: int
    d_charge: Fraction
    q: tuple
    mu: tuple

    @classmethod
    def from_weights(cls, weights, d_charge=1):
        """Spectrum from the Euler weights d_a of the flat coordinates."""
        d = as_rat(d_charge)
        q = tuple(1 - as_rat(w) for w in weights)
        return cls(n=len(q), d_charge=d, q=q, mu=tuple(x - d / 2 for x in q))

    def is_antisymmetric(self):
        return all(self.mu[a] + self.mu[self.n - 1 - a] == 0
                   for a in range(self.n))


def spectrum_of(model):
    if not isinstance(model, SingularityModel):
        model = build_model(model)
    return SpectrumData.from_weights(model.weights, model.d_charge)


def scaling_anomaly(spectrum):
    """
    gamma = -(1/4) sum mu_a^2 + n d / 48, exactly.
    """
    mu = spectrum.mu
    return -sum(m * m for m in mu) / 4 + spectrum.n * spectrum.d_charge / 48


# -- closed forms -------------------------------------------------------------

# G = -(1/24) log( s'(t)^p / Delta(s)^r )
_CLOSED_EXPONENTS = {
    "E6t": (Fraction(2), Fraction(1)),
    "E7t": (Fraction(3, 2), Fraction(1)),
    "E8t": (Fraction(1), Fraction(5, 6)),
}


def _model(model):
    if isinstance(model, SingularityModel):
        return model
    return build_model(model)


def g_closed_at_s(model, s, prec=DEFAULT_PRECISION):
    """Closed form G evaluated at the marginal value s."""
    model = _model(model)
    p, r = _CLOSED_EXPONENTS[model.name]
    with mpmath.workdps(prec + GUARD_DIGITS):
        s = to_mp(s)
        sprime = ds_dt(model, s, prec)
        disc = model.discriminant_at(s)
        return -(to_mp(p) * mpmath.log(sprime) -
                 to_mp(r) * mpmath.log(disc)) / 24


def g_closed(model, t, prec=DEFAULT_PRECISION):
    """
    Closed form G-function of an elliptic model, normalized by G(0) = 0.

    Parameters
    ----------
    model : SingularityModel or str
    t : number
        Flat marginal coordinate.
    prec : int, optional

    Returns
    -------
    G : mpmath number
    """
    model = _model(model)
    with mpmath.workdps(prec + GUARD_DIGITS):
        s = s_of_t(model, t, prec)
        return g_closed_at_s(model, s, prec)


def dg_dt_closed(model, t, h=None, prec=DEFAULT_PRECISION):
    """Central difference of :func:`g_closed`, default step 10**-(prec//3)."""
    with mpmath.workdps(prec + GUARD_DIGITS):
        t = to_mp(t)
        h = to_mp(h) if h is not None else mpmath.mpf(10) ** (-(prec // 3))
        return (g_closed(model, t + h, prec) -
                g_closed(model, t - h, prec)) / (2 * h)


# -- ring route ---------------------------------------------------------------

def ring_prefactor(model, pair):
    """
    (-1/12 + (5/12) d^mu d^mu*) / (2 d^mu d^mu*), the factor turning
    sum_nu c_{nu nu* mu, mu*} into dG/dt.
    """
    model = _model(model)
    mu, mustar = _check_pair(model, pair)
    dd = model.weights[mu - 1] * model.weights[mustar - 1]
    return (Fraction(-1, 12) + Fraction(5, 12) * dd) / (2 * dd)


def _check_pair(model, pair):
    if pair is None:
        pair = (2, model.n - 1)
    mu, mustar = (int(x) for x in pair)
    if not 2 <= mu <= model.n - 1 or mustar != model.pair(mu):
        raise UsageError("({}, {}) is not an admissible index pair of "
                         "{}".format(mu, mustar, model.name))
    return mu, mustar


def ring_trace_sum(model, s, pair=None, lin=None, path=None,
                   prec=DEFAULT_PRECISION):
    """
    sum_nu c_{nu nu* mu, mu*} at (0, ..., 0, t(s)).

    The sum is the mu*-derivative of the trace of multiplication by the
    flat field d/dt^mu, assembled from the linearization data and the exact
    traces T_a = sum_p c^p_{pa} of the Jacobi ring and their first order
    jets.

    Parameters
    ----------
    model : SingularityModel or str
    s : Fraction
        Rational marginal value; the ring tables are exact.
    pair : tuple of int, optional
        (mu, mu*), defaults to (2, n - 1).
    lin : LinearizationData, optional
    path : str, optional
        Linearization file, used when ``lin`` is not given.
    """
    model = _model(model)
    mu, mustar = _check_pair(model, pair)
    s = as_rat(s)
    deformations = model.deformations
    with mpmath.workdps(prec + GUARD_DIGITS):
        if lin is None:
            lin = linearization(model, s, path=path, prec=prec)
        base = multiplication_table(model, {"s": s}, basis=deformations)
        traces = base.trace_vector()
        total = mpmath.mpf(0)
        for a in range(1, model.n + 1):
            second = lin.second(a, mu, mustar)
            if second:
                total += second * to_mp(traces[a - 1].value)
        for b in range(1, model.n + 1):
            db = lin.d(b, mustar)
            if not db:
                continue
            if b == model.marginal_index:
                raise UsageError("linearization couples t^{} to the marginal "
                                 "deformation".format(mustar))
            jet_table = multiplication_table(model, {"s": s}, jet=b,
                                             basis=deformations)
            slopes = jet_table.trace_vector()
            for a in range(1, model.n + 1):
                da = lin.d(a, mu)
                if da:
                    total += da * db * to_mp(slopes[a - 1].slope)
        logger.debug("%s pair (%d, %d) at s = %s: trace sum %s", model.name,
                     mu, mustar, s, mpmath.nstr(total, 20))
        return total


def dg_dt_ring(model, s, pair=None, lin=None, path=None,
               prec=DEFAULT_PRECISION):
    """
    dG/dt at t = t(s) from the Jacobi ring and the linearization data.

    Parameters
    ----------
    model : SingularityModel or str
    s : Fraction
        Rational marginal value.
    pair : tuple of int, optional
        Admissible pair (mu, mu*), default (2, n - 1).
    lin : LinearizationData, optional
    path : str, optional
        Linearization file for E7t/E8t.
    prec : int, optional

    Returns
    -------
    dG : mpmath number

    Raises
    ------
    MissingData
        No linearization data for the model.
    DegenerateRing
        At discriminant roots.
    """
    model = _model(model)
    factor = ring_prefactor(model, pair)
    with mpmath.workdps(prec + GUARD_DIGITS):
        return to_mp(factor) * ring_trace_sum(model, s, pair, lin, path, prec)


def dg_dt_ring_symmetric(model, s, lin=None, path=None,
                         prec=DEFAULT_PRECISION):
    """Average of :func:`dg_dt_ring` over every admissible pair."""
    model = _model(model)
    s = as_rat(s)
    with mpmath.workdps(prec + GUARD_DIGITS):
        if lin is None:
            lin = linearization(model, s, path=path, prec=prec)
        pairs = [(mu, model.pair(mu)) for mu in range(2, model.n)]
        total = sum(dg_dt_ring(model, s, pair, lin, prec=prec)
                    for pair in pairs)
        return total / len(pairs)


# -- Virasoro -----------------------------------------------------------------

def virasoro_rhs(k, metric, c, euler, mu, d, prec=DEFAULT_PRECISION):
    """
    Right hand side of L_{E^k} G.

    Parameters
    ----------
    k : int
        Power of the Euler field, k >= 1.
    metric : array_like
        Flat metric eta_{ab}.
    c : array_like
        Structure constants, ``c[nu][a][b]`` = c^nu_{ab}, at the point.
    euler : sequence
        Components E^a at the point.
    mu : sequence
        Spectrum.
    d : number
        Charge.

    Returns
    -------
    value : mpmath number

    Raises
    ------
    UsageError
        Singular metric or k < 1.
    """
    if k < 1:
        raise UsageError("k must be at least 1")
    n = len(mu)
    rational = (int, str, Fraction)
    if k == 1 and all(isinstance(x, rational) for x in list(mu) + [d]):
        # anomaly term only; exact for rational spectra
        mu = [parse_rational(m) for m in mu]
        gamma = n * parse_rational(d) / 48 - sum(m * m for m in mu) / 4
        with mpmath.workdps(prec + GUARD_DIGITS):
            return to_mp(gamma)
    with mpmath.workdps(prec + GUARD_DIGITS):
        mus = [to_mp(m) for m in mu]
        c = [[[to_mp(x) for x in col] for col in row] for row in c]
        d = to_mp(d)
        if k == 1:
            return n * d / 48 - sum(m * m for m in mus) / 4
        eta = mpmath.matrix([[to_mp(x) for x in row] for row in metric])
        if mpmath.det(eta) == 0:
            raise UsageError("the metric is singular")
        eta_inv = eta ** -1
        E = mpmath.matrix([to_mp(x) for x in euler])
        U = mpmath.matrix(n, n)
        for nu in range(n):
            for a in range(n):
                U[nu, a] = mpmath.fsum(c[nu][a][s] * E[s] for s in range(n))
        T = [mpmath.fsum(c[nu][nu][b] for nu in range(n)) for b in range(n)]
        H = eta_inv * mpmath.matrix(T)
        M = mpmath.diag(mus)
        powers = [mpmath.eye(n)]
        for _ in range(k - 1):
            powers.append(powers[-1] * U)

        inner = mpmath.matrix(n, n)
        for j in range(k):
            inner += powers[j] * M * powers[k - 1 - j]
        first = -sum((M * inner)[a, a] for a in range(n)) / 4

        chain = mpmath.matrix(n, n)
        for j in range(k - 1):
            chain += powers[j] * M * powers[k - 2 - j]
        X = chain * E - d / 2 * (powers[k - 2] * E)
        second = -(X.T * eta * H)[0, 0] / 24
        return first + second


def elliptic_metric(n):
    """Antidiagonal unit pairing eta_{a, n+1-a} = 1."""
    return [[1 if a + b == n - 1 else 0 for b in range(n)] for a in range(n)]


# -- Coxeter groups -----------------------------------------------------------

@dataclass(frozen=True)
class CausticDatum:
    group: str
    caustic_count: int
    N_values: tuple


_COXETER_LABEL = re.compile(r"^([A-Z])_?(\d*)(?:\((\d+)\))?$")


def caustic_datum(group):
    """
    Caustic data of the orbit space C^n/W.

    Parameters
    ----------
    group : str
        'A4', 'D_5', 'E6', 'B3', 'F4', 'H3', 'H4', 'I2(5)'; the rank may
        be left out for the A, D, E and B series.

    Returns
    -------
    datum : CausticDatum
    """
    text = str(group).strip().upper().replace(" ", "")
    match = _COXETER_LABEL.match(text)
    if not match:
        raise UsageError("unknown Coxeter group {!r}".format(group))
    series, rank, h = match.groups()
    rank = int(rank) if rank else None
    if series in "AD" and h is None:
        if series == "D" and rank is not None and rank < 4:
            raise UsageError("D_n needs n >= 4")
        return CausticDatum(text, 1, (3,))
    if series == "E" and h is None and rank in (None, 6, 7, 8):
        return CausticDatum(text, 1, (3,))
    if series == "B" and h is None:
        return CausticDatum(text, 2, (4, 3))
    if text == "F4":
        return CausticDatum(text, 3, (4, 3, 3))
    if text in ("H3", "H4"):
        return CausticDatum(text, 2, (5, 3))
    if series == "I" and rank == 2 and h is not None and int(h) >= 3:
        return CausticDatum(text, 1, (int(h),))
    raise UsageError("unknown Coxeter group {!r}".format(group))


def caustic_coefficient(N):
    """-(1/24)(N-2)(N-3)/N, the coefficient of log kappa for an I2(N) germ."""
    return -Fraction((N - 2) * (N - 3), 24 * N)


def caustic_residues(N):
    """
    Residues along an I2(N) caustic.

    Returns
    -------
    tau_residue : Fraction
        Residue of d log tau_I, -(N-2)^2/(16N).
    jacobian_residue : Fraction
        Residue of -(1/24) d log J, (N-2)/48.
    """
    if N < 3:
        raise UsageError("caustic germs need N >= 3")
    return Fraction(-(N - 2) ** 2, 16 * N), Fraction(N - 2, 48)


def coxeter_g_coefficient(group):
    """
    Logarithmic coefficients of G on C^n/W.

    Returns
    -------
    coefficients : list of tuple
        (N_i, coefficient of log kappa_i) for every caustic with N_i > 3;
        an empty list means G = 0.
    """
    datum = caustic_datum(group)
    return [(N, caustic_coefficient(N)) for N in datum.N_values if N > 3]


def coxeter_tau_exponents(group):
    """Exponents -(N_i-2)^2/(16 N_i) of kappa_i in tau_I."""
    datum = caustic_datum(group)
    return [(N, caustic_residues(N)[0]) for N in datum.N_values]


# -- foldings -----------------------------------------------------------------

@dataclass(frozen=True)
class FoldingDatum:
    system: str
    gamma: Fraction
    deg_kappa: Fraction
    sigma: str


@dataclass(frozen=True)
class FoldingG:
    """
    G = sum_k coefficient_k log(f_k) for a folded manifold.

    ``log_coefficients`` maps 'kappa', 'eta', 'kappa_1' or 'lambda_t' to
    exact coefficients; missing entries are 0.
    """
    system: str
    gamma: Fraction
    log_coefficients: dict

    @property
    def kappa_coefficient(self):
        return self.log_coefficients.get(
            "kappa", self.log_coefficients.get("kappa_1", Fraction(0)))

    @property
    def eta_coefficient(self):
        return self.log_coefficients.get("eta", Fraction(0))

    def to_json(self):
        return {"system": self.system, "gamma": str(self.gamma),
                "log_coefficients": {k: str(v) for k, v in
                                     sorted(self.log_coefficients.items())}}


FOLDINGS = {
    "B3^(1,1)": FoldingDatum("B3^(1,1)", Fraction(-1, 48), Fraction(1),
                             "{t4 = t5}"),
    "B2^(2,1)": FoldingDatum("B2^(2,1)", Fraction(-1, 24), Fraction(2),
                             "{t2 = t3, t4 = t5}"),
    "G2^(1,1)": FoldingDatum("G2^(1,1)", Fraction(-1, 24), Fraction(1, 2),
                             "{t3 = t4 = t5}"),
}

# Euler weights of the flat coordinates of each folded manifold
_FOLDED_WEIGHTS = {
    "D4^(1,1)": ("1", "1/2", "1/2", "1/2", "1/2", "0"),
    "B3^(1,1)": ("1", "1/2", "1/2", "1/2", "0"),
    "B2^(2,1)": ("1", "1/2", "1/2", "0"),
    "G2^(1,1)": ("1", "1/2", "1/2", "0"),
    "G2^(3,1)": ("1", "2/3", "1/3", "0"),
}


def folding_label(system):
    """Map 'b3-11', 'B3^(1,1)', 'g2_31' ... to the canonical label."""
    key = re.sub(r"[\s^()_,\-]", "", str(system)).lower()
    for label in _FOLDED_WEIGHTS:
        if re.sub(r"[\s^()_,\-]", "", label).lower() == key:
            return label
    raise UsageError("unknown folding system {!r}, choose one of {}".format(
        system, ", ".join(_FOLDED_WEIGHTS)))


def folding_spectrum(system):
    return SpectrumData.from_weights(
        [as_rat(w) for w in _FOLDED_WEIGHTS[folding_label(system)]])


def folding_g(system):
    """
    G-function coefficients of D4^(1,1) and its foldings.

    Parameters
    ----------
    system : str
        B3^(1,1), B2^(2,1), G2^(1,1), D4^(1,1) or G2^(3,1) (loose spelling
        such as 'b3-11' accepted).

    Returns
    -------
    g : FoldingG
    """
    label = folding_label(system)
    if label in FOLDINGS:
        datum = FOLDINGS[label]
        coefficients = {"kappa": datum.gamma / datum.deg_kappa,
                        "eta": Fraction(-1, 2)}
        return FoldingG(label, datum.gamma, coefficients)
    if label == "D4^(1,1)":
        return FoldingG(label, Fraction(0), {"eta": Fraction(-1, 2)})
    return FoldingG(label, Fraction(-1, 18),
                    {"kappa_1": Fraction(-1, 12),
                     "lambda_t": Fraction(5, 24)})


# -- symmetries ---------------------------------------------------------------

@dataclass(frozen=True)
class TransformResult:
    """
    Image of a flat point and the predicted change of G,
    G_new = G + shift_coefficient * log(t^n).
    """
    point: tuple
    shift_coefficient: Fraction
    kind: str

    def shift(self, tn):
        return to_mp(self.shift_coefficient) * mpmath.log(tn)


def _pairing(point, metric):
    n = len(point)
    if metric is None:
        metric = elliptic_metric(n)
    return mpmath.fsum(to_mp(metric[a][b]) * point[a] * point[b]
                       for a in range(n) for b in range(n)
                       if metric[a][b])


def modular_and_inversion_transform(model, point, kind="inversion",
                                    metric=None, prec=DEFAULT_PRECISION):
    """
    Inversion symmetry or modular translation of a flat point.

    Parameters
    ----------
    model : SingularityModel or str
    point : sequence
        Flat coordinates (t^1, ..., t^n).
    kind : {'inversion', 'translation'}
        'inversion' maps t^1 -> (1/2) t_s t^s / t^n, t^i -> t^i / t^n,
        t^n -> -1/t^n; 'translation' maps t^n -> t^n + 1.
    metric : array_like, optional
        Flat metric, antidiagonal unit pairing by default.

    Returns
    -------
    result : TransformResult
    """
    model = _model(model)
    n = model.n
    if len(point) != n:
        raise UsageError("{} points have {} coordinates, got {}".format(
            model.name, n, len(point)))
    with mpmath.workdps(prec + GUARD_DIGITS):
        t = [to_mp(x) for x in point]
        if kind == "translation":
            return TransformResult(tuple(t[:-1] + [t[-1] + 1]), Fraction(0),
                                   kind)
        if kind != "inversion":
            raise UsageError("unknown transformation {!r}".format(kind))
        tn = t[-1]
        if tn == 0:
            raise UsageError("the inversion needs t^n != 0")
        image = [_pairing(t, metric) / (2 * tn)]
        image += [x / tn for x in t[1:-1]]
        image.append(-1 / tn)
        return TransformResult(tuple(image), Fraction(n, 24) - Fraction(1, 2),
                               kind)


def reflect_point(point):
    """t^i -> -t^i for i = 2 .. n-1; the inversion squares to this map."""
    return tuple([point[0]] + [-x for x in point[1:-1]] + [point[-1]])


def eta_g(tau, prec=DEFAULT_PRECISION):
    """G = -(1/2) log eta(tau)."""
    with mpmath.workdps(prec + GUARD_DIGITS):
        return -mpmath.log(dedekind_eta(tau, prec)) / 2


def eta_translation_shift(tau, prec=DEFAULT_PRECISION):
    """G(tau + 1) - G(tau) for G = -(1/2) log eta, on the principal branch."""
    with mpmath.workdps(prec + GUARD_DIGITS):
        tau = parse_complex(tau, prec + GUARD_DIGITS) \
            if isinstance(tau, str) else mpmath.mpc(tau)
        ratio = dedekind_eta(tau + 1, prec) / dedekind_eta(tau, prec)
        return -mpmath.log(ratio) / 2


def tau_minus48(model, s_assign, prec=DEFAULT_PRECISION):
    """
    tau_I^(-48) = s'(t)^4 / Delta(s)^2 * det(m_Hess).

    Parameters
    ----------
    model : SingularityModel or str
    s_assign : dict
        Rational deformation values including the marginal slot.
    """
    model = _model(model)
    with mpmath.workdps(prec + GUARD_DIGITS):
        s = marginal_value(model, s_assign)
        det = hessian_mult_det(model, s_assign)
        sprime = ds_dt(model, s, prec)
        return sprime ** 4 / to_mp(model.discriminant_at(s)) ** 2 * to_mp(det)
