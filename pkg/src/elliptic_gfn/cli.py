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
Command line interface: ring tables, the flat coordinate, G-functions,
Coxeter and folding data, Getzler and Halphen checks and the verification
suites.
'''

import argparse
import json
import logging
import sys

import mpmath

from elliptic_gfn import g_function, verification
from elliptic_gfn.config import (DEFAULT_S_GRID, GUARD_DIGITS, RunConfig,
                                 parse_complex, parse_rational,
                                 precision_from_env, to_mp)
from elliptic_gfn.errors import GfnError, UsageError
from elliptic_gfn.exact_algebra import MultiPoly
from elliptic_gfn.flat_coords import s_of_t, t_of_s
from elliptic_gfn.getzler import (PolynomialG, PolynomialPrepotential, ZeroG,
                                  a2_prepotential, getzler_scan)
from elliptic_gfn.halphen import (d4_oracles, halphen_integrate,
                                  halphen_residual, resolve_d4_convention,
                                  theta_candidate)
from elliptic_gfn.milnor_ring import build_model, multiplication_table

__all__ = ["RunConfig", "parse_args", "main", "run"]

logger = logging.getLogger(__name__)


def _number(x, digits):
    if isinstance(x, (int, str)):
        return x
    return mpmath.nstr(x, digits)


def _emit(payload, args):
    if args.output == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for key in sorted(payload):
            print("{}: {}".format(key, payload[key]))


def cmd_table(args):
    model = build_model(args.model)
    table = multiplication_table(model, {"s": parse_rational(args.s)},
                                 jet=args.jet)
    if args.output == "json":
        print(json.dumps(table.to_json(), indent=2, sort_keys=True))
    else:
        print("{} at s = {} ({}associative, {}commutative)".format(
            model.name, args.s, "" if table.is_associative() else "not ",
            "" if table.is_commutative() else "not "))
        print("trace vector: {}".format(
            ", ".join(str(x.value) for x in table.trace_vector())))
    return 0


def cmd_invert(args):
    prec = args.precision
    with mpmath.workdps(prec + GUARD_DIGITS):
        if args.t is not None:
            s, iterations = s_of_t(args.model, to_mp(args.t), prec,
                                   full_output=True)
            payload = {"model": build_model(args.model).name, "t": args.t,
                       "s": _number(s, prec), "iterations": iterations}
        else:
            payload = {"model": build_model(args.model).name, "s": args.s,
                       "t": _number(t_of_s(args.model, to_mp(args.s), prec),
                                    prec)}
    payload["precision_digits"] = prec
    _emit(payload, args)
    return 0


def cmd_g(args):
    prec = args.precision
    model = build_model(args.model)
    with mpmath.workdps(prec + GUARD_DIGITS):
        if args.route == "closed":
            if args.t is None:
                raise UsageError("the closed route needs --t")
            if args.derivative:
                value = g_function.dg_dt_closed(model, to_mp(args.t),
                                                prec=prec)
            else:
                value = g_function.g_closed(model, to_mp(args.t), prec)
        else:
            if args.s is None:
                raise UsageError("the ring route needs a rational --s")
            value = g_function.dg_dt_ring(model, parse_rational(args.s),
                                          path=args.linearization, prec=prec)
    _emit({"value": _number(value, prec), "precision_digits": prec,
           "route": args.route, "model": model.name}, args)
    return 0


def cmd_coxeter(args):
    coefficients = g_function.coxeter_g_coefficient(args.group)
    datum = g_function.caustic_datum(args.group)
    _emit({"group": datum.group, "N": list(datum.N_values),
           "log_kappa_coefficients": [[N, str(c)] for N, c in coefficients],
           "tau_exponents": [[N, str(c)] for N, c in
                             g_function.coxeter_tau_exponents(args.group)]},
          args)
    return 0


def cmd_fold(args):
    _emit(g_function.folding_g(args.system).to_json(), args)
    return 0


def cmd_getzler(args):
    F = PolynomialPrepotential.from_file(args.prepotential) \
        if args.prepotential else a2_prepotential()
    if args.g == "zero":
        G = ZeroG(F.n)
    else:
        G = PolynomialG(MultiPoly.variable(F.n, F.n - 1))
    report = getzler_scan(F, G, args.points, args.seed, args.precision)
    _emit(report.to_json(), args)
    return 0


def cmd_d4_getzler(args):
    F, G = d4_oracles(prec=args.precision)
    report = getzler_scan(F, G, args.points, args.seed, args.precision)
    _emit(report.to_json(), args)
    return 0


def cmd_halphen(args):
    prec = args.precision
    if args.resolve:
        convention, residuals = resolve_d4_convention(prec=prec)
        _emit({"convention": convention.to_json(),
               "residuals": {k: _number(v, 10)
                             for k, v in sorted(residuals.items())}}, args)
        return 0
    state = theta_candidate(args.tau, prec=prec)
    payload = {"tau": args.tau,
               "residual": _number(halphen_residual(args.tau, prec=prec), 10)}
    if args.to is not None:
        state = halphen_integrate(state, args.to, prec=prec)
        payload["tau"] = args.to
    payload.update({"u": _number(state.u, 30), "v": _number(state.v, 30),
                    "w": _number(state.w, 30)})
    _emit(payload, args)
    return 0


def cmd_verify(args):
    tolerances = {name: args.tol for name in args.suite} if args.tol else {}
    config = RunConfig(precision=args.precision, s_grid=tuple(args.s_grid),
                       tolerances=tolerances, points=args.points,
                       seed=args.seed, output=args.output,
                       n_proc=args.n_proc)
    reports = [verification.run_suite(name, config) for name in args.suite]
    if args.output == "json":
        print(verification.report_json(reports))
    elif args.output == "csv":
        print(verification.report_csv(reports), end="")
    else:
        print(verification.report_pretty(reports))
    return 0 if all(r.passed for r in reports) else 1


def _rational(text):
    try:
        return str(parse_rational(text))
    except UsageError as err:
        raise argparse.ArgumentTypeError(str(err))


def _complex(text):
    try:
        parse_complex(text)
    except UsageError as err:
        raise argparse.ArgumentTypeError(str(err))
    return text


def parse_args(args):
    """
    Parse command line parameters.

    Parameters
    ----------
    args: list
        command line parameters as list of strings

    Returns
    ----------
    args : argparse.Namespace
        Parsed command line parameters
    """
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--precision", type=int, default=None,
        help="Working precision in decimal digits. Default: $GFN_PRECISION "
             "or 64.")
    common.add_argument("--json", dest="output", action="store_const",
                        const="json", help="Print JSON.")
    common.add_argument("-v", "--verbose", action="count", default=0,
                        help="More log output, repeatable.")

    parser = argparse.ArgumentParser(
        description="G-functions of elliptic Frobenius manifolds.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", parents=[common],
                       help="Structure constants of the Jacobi ring.")
    p.add_argument("--model", required=True, help="e6t, e7t or e8t.")
    p.add_argument("--s", type=_rational, default="1",
                   help="Rational marginal value. Default: 1")
    p.add_argument("--jet", default=None,
                   help="Deformation slot (e.g. s7) for the first order jet.")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("invert", parents=[common],
                       help="Flat marginal coordinate t(s) or s(t).")
    p.add_argument("--model", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--t", type=_rational)
    group.add_argument("--s", type=_rational)
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("g", parents=[common], help="G-function values.")
    p.add_argument("--model", required=True)
    p.add_argument("--t", type=_rational, default=None)
    p.add_argument("--s", type=_rational, default=None)
    p.add_argument("--route", choices=["closed", "ring"], default="closed",
                   help="closed: G(t); ring: dG/dt at rational s.")
    p.add_argument("--derivative", action="store_true",
                   help="Closed route: print dG/dt instead of G.")
    p.add_argument("--linearization", default=None,
                   help="Linearization file for the E7t/E8t ring route.")
    p.set_defaults(func=cmd_g)

    p = sub.add_parser("verify", parents=[common],
                       help="Run verification suites.")
    p.add_argument("--csv", dest="output", action="store_const",
                   const="csv", help="Print the checks as CSV.")
    p.add_argument("--suite", action="append", choices=list(
        verification.SUITES), default=None,
        help="Suite to run, repeatable. Default: all.")
    p.add_argument("--tol", type=float, default=None,
                   help="Tolerance override for the selected suites.")
    p.add_argument("--points", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n_proc", type=int, default=1,
                   help="Worker processes for per-point suites.")
    p.add_argument("--s-grid", dest="s_grid", nargs="+", type=_rational,
                   default=list(DEFAULT_S_GRID))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("coxeter", parents=[common],
                       help="G coefficients of C^n/W.")
    p.add_argument("--group", required=True)
    p.set_defaults(func=cmd_coxeter)

    p = sub.add_parser("fold", parents=[common],
                       help="G coefficients of D4^(1,1) foldings.")
    p.add_argument("--system", required=True)
    p.set_defaults(func=cmd_fold)

    p = sub.add_parser("getzler", parents=[common],
                       help="Getzler residual of a polynomial prepotential.")
    p.add_argument("--prepotential", default=None,
                   help="JSON prepotential file. Default: built-in A2.")
    p.add_argument("--g", choices=["zero", "perturbed"], default="zero")
    p.add_argument("--points", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_getzler)

    p = sub.add_parser("d4-getzler", parents=[common],
                       help="Getzler residual of D4^(1,1), G = -log(eta)/2.")
    p.add_argument("--points", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_d4_getzler)

    p = sub.add_parser("halphen", parents=[common],
                       help="Theta solution of Halphen's system.")
    p.add_argument("--tau", type=_complex, default="2i")
    p.add_argument("--to", type=_complex, default=None,
                   help="Integrate from --tau to this point.")
    p.add_argument("--resolve", action="store_true",
                   help="Re-derive the D4 convention.")
    p.set_defaults(func=cmd_halphen)

    args = parser.parse_args(args)
    if args.output is None:
        args.output = "pretty"
    if getattr(args, "suite", False) is None:
        args.suite = list(verification.SUITES)
    return args


def main(args):
    """
    Returns
    -------
    status : int
        0 on success, 1 if a verification check failed, 2 on errors.
    """
    args = parse_args(args)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(asctime)s %(name)s %(levelname)s %(message)s")
    try:
        if args.precision is None:
            args.precision = precision_from_env()
        RunConfig(precision=args.precision, output=args.output)
        return args.func(args)
    except GfnError as err:
        print("gfn: error: {}".format(err), file=sys.stderr)
        return 2


def run():
    sys.exit(main(sys.argv[1:]))


if __name__ == '__main__':
    run()
