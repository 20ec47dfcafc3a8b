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
Exceptions raised by elliptic_gfn.

All of them derive from GfnError so that the command line front end can
report them uniformly; each also derives from the closest built-in so that
callers catching ValueError or RuntimeError keep working.
'''


class GfnError(Exception):
    """Base class of all elliptic_gfn errors."""


class UsageError(GfnError, ValueError):
    """Invalid arguments: arity mismatch, unknown labels, singular metric."""


class DomainError(GfnError, ValueError):
    """An argument lies outside the supported evaluation domain."""


class DegenerateRing(GfnError, ArithmeticError):
    """The Jacobi ring is not finite dimensional at the requested point."""


class GroebnerBudgetError(GfnError, RuntimeError):
    """
    Buchberger's algorithm exceeded its step budget.

    Parameters
    ----------
    message : str
        Description of the failure.
    basis_so_far : list of MultiPoly
        Polynomials collected before the budget ran out.
    """

    def __init__(self, message, basis_so_far=()):
        super().__init__(message)
        self.basis_so_far = list(basis_so_far)


class ConvergenceError(GfnError, RuntimeError):
    """An iteration did not converge; ``last_iterate`` is the final value."""

    def __init__(self, message, last_iterate=None):
        super().__init__(message)
        self.last_iterate = last_iterate


class MissingData(GfnError, LookupError):
    """Required external data (e.g. a linearization file) is unavailable."""


class IntegrationError(GfnError, RuntimeError):
    """ODE integration failed; ``last_state`` is the last accepted state."""

    def __init__(self, message, last_state=None):
        super().__init__(message)
        self.last_state = last_state


class ConventionError(GfnError, RuntimeError):
    """No solution convention met the tolerance; ``residuals`` lists them."""

    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = dict(residuals or {})
