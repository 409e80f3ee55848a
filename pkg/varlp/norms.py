#!/usr/bin/env python3
#
#  norms.py
#
"""Modular, Luxemburg norm and conjugate exponents over γ_d.

For p_plus < ∞ the modular of f/λ is continuous and non-increasing in λ,
so the Luxemburg norm is the root of ρ(f/λ) = 1 and is found by bisection.

"""

import logging
from dataclasses import replace

import numpy as np
from scipy.optimize import bisect

from .exponents import ExponentField


log = logging.getLogger(__name__)

NORM_TOL = 1e-9
BRACKET_FACTOR = 4.0
MAX_EXPANSIONS = 200


class DivergenceError(ArithmeticError):
    pass


class ConjugateError(ValueError):
    pass


def _modular_terms(values, exponents, weights, lam=1.0):
    with np.errstate(over='ignore', invalid='ignore'):
        return float(np.dot(weights, (np.abs(values) / lam) ** exponents))


def modular(f, p, rule):
    """∫ |f(x)|^p(x) dγ_d(x) by quadrature."""
    return _modular_terms(rule.evaluate(f), p(rule.nodes), rule.gaussian_weights())


def luxemburg_from_values(values, exponents, weights, p_minus, tol=NORM_TOL):
    """Luxemburg norm of the function with the given node values."""
    values = np.abs(np.asarray(values, dtype=float))

    if not values.any():
        return 0.0

    def excess(lam):
        rho = _modular_terms(values, exponents, weights, lam)
        return rho - 1 if np.isfinite(rho) else np.inf

    start = max(1.0, _modular_terms(values, exponents, weights))

    if not np.isfinite(start):
        start = 1.0

    lo = hi = start ** (1.0 / p_minus)

    for _ in range(MAX_EXPANSIONS):
        if excess(hi) <= 0:
            break
        lo, hi = hi, hi * BRACKET_FACTOR
    else:
        raise DivergenceError("Modular stays above 1 (or infinite) up to lambda=%g." % hi)

    if lo == hi:
        for _ in range(MAX_EXPANSIONS):
            if excess(lo) > 0:
                break
            lo, hi = lo / BRACKET_FACTOR, lo
        else:
            raise DivergenceError("Modular stays below 1 down to lambda=%g." % lo)

    if excess(hi) == 0:
        return float(hi)

    log.debug("Luxemburg bracket [%g, %g].", lo, hi)
    return float(bisect(excess, lo, hi, xtol=np.finfo(float).tiny, rtol=tol, maxiter=200))


def luxemburg_norm(f, p, rule, tol=NORM_TOL):
    """inf{λ > 0 : ρ(f/λ) ≤ 1} with relative tolerance ``tol``."""
    return luxemburg_from_values(rule.evaluate(f), p(rule.nodes), rule.gaussian_weights(),
                                 p.p_minus, tol)


def conjugate(p):
    """Pointwise conjugate exponent p' = p / (p - 1)."""
    if p.p_minus <= 1:
        raise ConjugateError("Conjugate of %s is unbounded (p_minus = 1)." % p.name)

    func = p.func
    p_infty = None if p.p_infty is None else p.p_infty / (p.p_infty - 1)

    def dual(x):
        values = func(x)
        return values / (values - 1)

    return replace(p, func=dual, p_minus=p.p_plus / (p.p_plus - 1),
                   p_plus=p.p_minus / (p.p_minus - 1), p_infty=p_infty, constants={},
                   name="conjugate(%s)" % p.name)


def holder_check(f, g, p, rule, tol=NORM_TOL):
    """Return (∫|fg| dγ, 2‖f‖_p ‖g‖_p') for the variable Hölder inequality."""
    lhs = float(np.dot(rule.gaussian_weights(), np.abs(rule.evaluate(f) * rule.evaluate(g))))
    rhs = 2 * luxemburg_norm(f, p, rule, tol) * luxemburg_norm(g, conjugate(p), rule, tol)
    return lhs, rhs
