#!/usr/bin/env python3
#
#  regularity.py
#
"""Sampled diagnostics for exponent classes LH0, LH∞ and P^∞_γ."""

import logging
from typing import NamedTuple

import numpy as np

from .norms import ConjugateError, conjugate


log = logging.getLogger(__name__)


def _directions(rng, n, d):
    dirs = rng.standard_normal((n, d))
    return dirs / np.linalg.norm(dirs, axis=1, keepdims=True)


def _log_uniform(rng, n, low, high):
    return np.exp(rng.uniform(np.log(low), np.log(high), n))


def lh0_constant(p, samples=4000, d=1, seed=0, radius=4.0, min_distance=1e-9, focus=None):
    """Empirical log-Hölder constant of 1/p at pairs with |x - y| ≤ 1/2.

    Half of the pair distances are uniform on (0, 1/2], half log-uniform
    down to ``min_distance``. With ``focus`` given, pairs straddle that
    point instead of sitting at random places.

    """
    rng = np.random.default_rng(seed)
    half = samples // 2
    dist = np.concatenate([rng.uniform(0, 0.5, half) + 1e-300,
                           _log_uniform(rng, samples - half, min_distance, 0.5)])
    dirs = _directions(rng, samples, d)

    if focus is None:
        x = rng.uniform(-radius, radius, (samples, d))
    else:
        x = np.asarray(focus, dtype=float) - dirs * dist[:, None] / 2

    y = x + dirs * dist[:, None]
    jump = np.abs(1 / p(x) - 1 / p(y))
    return float(np.max(jump * np.log(np.e + 1 / dist)))


def lhinf_constant(p, samples=4000, d=1, seed=0, radius_max=1e6):
    """Empirical sup of |1/p(x) - 1/p_∞|·log(e + |x|)."""
    if p.p_infty is None:
        raise ValueError("Exponent %s has no limit at infinity." % p.name)

    rng = np.random.default_rng(seed)
    x = _directions(rng, samples, d) * _log_uniform(rng, samples, 1e-3, radius_max)[:, None]
    norms = np.linalg.norm(x, axis=1)
    return float(np.max(np.abs(1 / p(x) - 1 / p.p_infty) * np.log(np.e + norms)))


class PinftyCheck(NamedTuple):
    c_gamma_hat: float
    equivalence_ok: bool


def pinfty_samples(rng, samples, d, radius_max):
    """Half uniform in the ball of radius 5, half at log-uniform radii."""
    half = samples // 2
    near = _directions(rng, half, d) * (5 * rng.random((half, 1)) ** (1 / d))
    far = (_directions(rng, samples - half, d) *
           _log_uniform(rng, samples - half, 1e-3, radius_max)[:, None])
    return np.concatenate([near, far])


def equivalence_constants(p, c_gamma_hat):
    """(C1, C2) = (e^(C/p_∞), e^(C·p'_minus/p_∞))."""
    p_minus_conj = p.p_plus / (p.p_plus - 1) if p.p_plus > 1 else np.inf
    return np.exp(c_gamma_hat / p.p_infty), np.exp(c_gamma_hat * p_minus_conj / p.p_infty)


def pinfty_gamma_check(p, samples=10 ** 4, d=1, seed=0, radius_max=1e3):
    """Measure C_γ and test both two-sided exponential bounds with it.

    The bounds are compared in log space: |x|²|p(x)/p_∞ - 1| ≤ log C1 and
    |x|²|p'(x)/p'_∞ - 1| ≤ log C2.

    """
    if p.p_infty is None:
        raise ValueError("Exponent %s has no limit at infinity." % p.name)

    rng = np.random.default_rng(seed)
    x = pinfty_samples(rng, samples, d, radius_max)
    sq = np.einsum('ij,ij->i', x, x)
    values = p(x)
    c_hat = float(np.max(np.abs(values - p.p_infty) * sq))
    log_c1, log_c2 = np.log(equivalence_constants(p, c_hat))
    slack = 1e-12 * (1 + c_hat)
    ok = bool(np.all(sq * np.abs(values / p.p_infty - 1) <= log_c1 + slack))

    try:
        dual = conjugate(p)
    except ConjugateError:
        log.debug("No conjugate side for %s.", p.name)
    else:
        dual_values = dual(x)
        ok = ok and bool(np.all(sq * np.abs(dual_values / dual.p_infty - 1) <= log_c2 + slack))

    log.debug("P-infinity check for %s: C_gamma_hat=%g, ok=%s.", p.name, c_hat, ok)
    return PinftyCheck(c_hat, ok)
