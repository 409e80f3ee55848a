#!/usr/bin/env python3
#
#  lemmas.py
#
"""Scalar integrals and constants used by the kernel estimates."""

import logging

import numpy as np
from scipy.special import gamma, gammaincc

from ..hermite.adaptive import SIDE_U, SIDE_V, integrate_unit
from .report import BoundReport


log = logging.getLogger(__name__)

LEMMA_RTOL = 1e-13


def expineq_constant(alpha, c):
    """sup_{x>0} x^α e^(-c x²) = (α / (2ec))^(α/2), and 1 for α = 0."""
    if c <= 0:
        raise ValueError("expineq_constant needs c > 0.")

    if alpha < 0:
        raise ValueError("expineq_constant needs alpha >= 0.")

    if alpha == 0:
        return 1.0

    return float((alpha / (2 * np.e * c)) ** (alpha / 2))


def expineq_grid_max(alpha, c, points=200001):
    """Grid-search companion of :func:`expineq_constant`."""
    peak = np.sqrt(alpha / (2 * c)) if alpha > 0 else 0.0
    x = np.linspace(0, 6 * max(peak, 1 / np.sqrt(c)), points)[1:]
    return float(np.max(x ** alpha * np.exp(-c * x ** 2)))


def _check_positive(name, value):
    if value <= 0:
        raise ValueError("%s must be positive, got %r." % (name, value))


def lemma_gamma(alpha, rtol=LEMMA_RTOL):
    """∫_0^1 (-log √(1-u))^(α-1) du by adaptive quadrature."""
    _check_positive('alpha', alpha)
    result = integrate_unit(lambda nodes: nodes.t ** (alpha - 1), 1e-300, rtol=rtol)
    return float(result.value[0])


def lemma_gamma_closed_form(alpha):
    """2^(1-α) Γ(α), from t = -log √(1-u)."""
    _check_positive('alpha', alpha)
    return float(2 ** (1 - alpha) * gamma(alpha))


def log_power_integrals(beta, rtol=LEMMA_RTOL, order=16):
    """Return (i, ii).

    i  = ∫_{1/2}^1 (-log √(1-u))^(β/2) (1-u)^(-1/2) du
    ii = ∫_0^{1/2} (-log √(1-u))^(β/2) u^(-1) du

    """
    _check_positive('beta', beta)
    first = integrate_unit(lambda n: n.t ** (beta / 2) / np.sqrt(n.v), 1e-300,
                           sides=(SIDE_V,), rtol=rtol, order=order)
    second = integrate_unit(lambda n: n.t ** (beta / 2) / n.u, 1e-300,
                            sides=(SIDE_U,), rtol=rtol, order=order)
    return float(first.value[0]), float(second.value[0])


def log_power_closed_form(beta):
    """Part i as 2Γ(β/2 + 1, log(2)/2), the upper incomplete gamma function."""
    _check_positive('beta', beta)
    s = beta / 2 + 1
    return float(2 * gamma(s) * gammaincc(s, np.log(2) / 2))


def log_power_refinement(beta):
    """Largest change of either integral between a coarse and a refined run."""
    coarse = log_power_integrals(beta, rtol=1e-10, order=12)
    fine = log_power_integrals(beta, rtol=LEMMA_RTOL, order=20)
    return float(max(abs(c - f) for c, f in zip(coarse, fine)))


def exp_decay_estimate_ratios(a, eps, d):
    """∫_0^1 e^(-(1-ε)a/t) t^(-(d/2+1)) dt / e^(-(1-ε)a) for each a."""
    a = np.atleast_1d(np.asarray(a, dtype=float))
    c = 1 - eps

    def integrand(nodes):
        # 1/t - 1 = (1-t)/t, with t playing the role of u
        ratio = (nodes.v / nodes.u)[:, None]
        return np.exp(-c * a * ratio - (d / 2 + 1) * nodes.log_u[:, None])

    return integrate_unit(integrand, 1e-300, rtol=1e-11).value


def exp_decay_estimate_closed_form(a, eps, d):
    """a^(-d/2) ∫_0^∞ e^(-(1-ε)s) (s + a)^(d/2-1) ds via the upper incomplete gamma."""
    a = np.asarray(a, dtype=float)
    c = 1 - eps
    k = d / 2
    return a ** -k * np.exp(c * a) * c ** -k * gamma(k) * gammaincc(k, c * a)


def exp_decay_estimate_check(eps, d=1, samples=200, seed=0, a_max=200.0):
    """Empirical C_ε over a ≥ d/2; the endpoint a = d/2 is always the first sample."""
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1).")

    rng = np.random.default_rng(seed)
    a = np.concatenate([[d / 2], np.exp(rng.uniform(np.log(d / 2), np.log(a_max),
                                                    samples - 1))])
    ratios = exp_decay_estimate_ratios(a, eps, d)
    closed = exp_decay_estimate_closed_form(a, eps, d)
    error = float(np.max(np.abs(ratios - closed) / closed))
    log.debug("Estimate (eps=%g, d=%i): C=%g, closed-form error %g.", eps, d,
              ratios.max(), error)
    return BoundReport.from_ratios('exp-decay-estimate', ratios, eps=eps, d=d,
                                   closed_form_error=error)
