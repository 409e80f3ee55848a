#!/usr/bin/env python3
#
#  global_part.py
#
"""Global-part kernel bounds and the exponent lemmas they rely on."""

import logging

import numpy as np
from scipy.special import gamma

from ..geometry.admissible import uniform_ball
from ..hermite.quadrature import centered_rule
from ..riesz.kernel import riesz_kernel_pairs
from ..riesz.spectral import as_order
from ..varlp.exponents import ExponentClass
from ..varlp.norms import conjugate
from ..varlp.regularity import pinfty_gamma_check, pinfty_samples
from .geometry import PreconditionError, pair_geometry, sample_pairs
from .report import BoundReport


log = logging.getLogger(__name__)

GLOBAL_REGIONS = ('b_nonpos', 'b_pos_near', 'b_pos_far')
KERNEL_RTOL = 1e-6


def eps_supremum(beta, d, p_infty=2.0):
    """min{1/d, 1/p'_∞, (2/d)(β/2 - r)} with r = min{β/4, 1/2}."""
    r = min(beta / 4, 0.5)
    return min(1.0 / d, 1.0 - 1.0 / p_infty, 2.0 / d * (beta / 2 - r))


def default_eps(beta, d, p_infty=2.0):
    return eps_supremum(beta, d, p_infty) / 2


def _check_eps(eps, beta, d, p_infty):
    top = eps_supremum(beta, d, p_infty)

    if not 0 < eps < top:
        raise PreconditionError("eps=%g is outside (0, %g) for beta=%g, d=%i, p_infty=%g."
                                % (eps, top, beta, d, p_infty))


def global_rhs(xs, ys, region, eps):
    """Right-hand side of the global bound for each pair of the region."""
    d = xs.shape[1]

    if region == 'b_nonpos':
        yy = np.einsum('ij,ij->i', ys, ys)
        return (np.linalg.norm(xs, axis=1) + 1) * np.exp(-(1 - eps) * yy)

    _, u_t0, _ = pair_geometry(xs, ys)
    power = d if region == 'b_pos_near' else d + 1
    return np.linalg.norm(xs + ys, axis=1) ** power * np.exp(-(1 - eps) * u_t0)


def global_bound_check(beta, region, eps=None, samples=200, d=1, seed=0, p_infty=2.0):
    """|N(x, y)| ≤ C·rhs over global pairs of one region; reports the empirical C."""
    beta = as_order(beta).beta

    if region not in GLOBAL_REGIONS:
        raise ValueError("Unknown global region '%s' (known: %s)."
                         % (region, ", ".join(GLOBAL_REGIONS)))

    if d >= 2 and beta < 1:
        raise PreconditionError("Global bounds in d >= 2 need beta >= 1.")

    if eps is None:
        eps = default_eps(beta, d, p_infty)

    _check_eps(eps, beta, d, p_infty)
    rng = np.random.default_rng(seed)
    xs, ys = sample_pairs(rng, samples, d, region)
    rhs = global_rhs(xs, ys, region, eps)
    kernel = np.abs(riesz_kernel_pairs(beta, xs, ys, tol=KERNEL_RTOL * rhs))
    log.debug("Global bound %s beta=%g d=%i eps=%g: %i pairs.", region, beta, d, eps, samples)
    return BoundReport.from_sides('global-' + region, kernel, rhs, beta=beta, d=d, eps=eps,
                                  region=region)


def alpha_infty(p_infty, eps):
    """α_∞ = (1-ε)/2 - |1/p_∞ - (1-ε)/2|."""
    half = (1 - eps) / 2
    return half - abs(1 / p_infty - half)


def sphere_area(d):
    return 2 * np.pi ** (d / 2) / gamma(d / 2)


def q_moment_bound(alpha, d, p_conj_plus):
    """∫ (|z|^(d+1) + |z|^((d+1)p'_+)) e^(-α|z|) dz in closed form."""
    return float(sum(sphere_area(d) * gamma(k + d) / alpha ** (k + d)
                     for k in (d + 1, (d + 1) * p_conj_plus)))


def q_moments(p, alpha, xs, order=8, margin=60.0):
    """∫ Q(x, y)^(p'(y)) dy with Q = |x+y|^(d+1) e^(-α|x+y|), one value per x."""
    d = xs.shape[1]
    dual = conjugate(p)
    reach = ((d + 1) * dual.p_plus + d + margin) / alpha
    rule = centered_rule(np.zeros(d), reach, order=order, levels=6, panel_width=1.0)
    r = np.linalg.norm(rule.nodes, axis=1)
    out = np.empty(len(xs))

    for i, x in enumerate(xs):
        # z = x + y
        exponent = dual(rule.nodes - x)
        out[i] = np.dot(rule.weights, (r ** (d + 1) * np.exp(-alpha * r)) ** exponent)

    return out


def _equivalence_log_ratios(p, xs, ys):
    """log of e^(|y|²/p(y) - |x|²/p(x)) / e^((|y|² - |x|²)/p_∞)."""
    def excess(points):
        values = p(points)
        sq = np.einsum('ij,ij->i', points, points)
        return sq * (p.p_infty - values) / (values * p.p_infty)

    return excess(ys) - excess(xs)


def pq_kernel_check(p, eps, samples=100, d=1, seed=0):
    """Uniform Q-moment bound and the exponential equivalence of P^∞_γ exponents."""
    if not p.in_class(ExponentClass.PINFTY_GAMMA) or p.p_infty is None:
        raise PreconditionError("Exponent %s is not tagged P-infinity-gamma." % p.name)

    if p.p_minus <= 1:
        raise PreconditionError("The Q-moment needs p_minus > 1.")

    if not 0 < eps < 1 - 1 / p.p_infty:
        raise PreconditionError("eps=%g must lie below 1/p'_inf = %g."
                                % (eps, 1 - 1 / p.p_infty))

    alpha = alpha_infty(p.p_infty, eps)

    if alpha <= 0:
        raise PreconditionError("alpha_infty = %g is not positive for eps=%g." % (alpha, eps))

    rng = np.random.default_rng(seed)
    xs = uniform_ball(rng, samples, d, 5.0)
    moments = q_moments(p, alpha, xs)
    bound = q_moment_bound(alpha, d, conjugate(p).p_plus)

    c_gamma = p.constants.get('C_gamma')

    if c_gamma is None:
        c_gamma = pinfty_gamma_check(p, d=d, seed=seed).c_gamma_hat

    px = pinfty_samples(rng, samples, d, 1e3)
    py = pinfty_samples(rng, samples, d, 1e3)
    ratios = _equivalence_log_ratios(p, px, py)
    ratio_bound = 2 * c_gamma / (p.p_minus * p.p_infty)
    equivalence = int((np.abs(ratios) > ratio_bound + 1e-12 * (1 + ratio_bound)).sum())

    report = BoundReport.from_sides('pq-kernel', moments, np.full(samples, bound), bound=1.0,
                                    rtol=1e-8, d=d, eps=eps, alpha_infty=alpha,
                                    moment_bound=bound, equivalence_violations=equivalence,
                                    equivalence_log_bound=ratio_bound,
                                    equivalence_log_max=float(np.abs(ratios).max()),
                                    moment_spread=float(moments.max() / moments.min()))
    report.violations += equivalence
    return report


def _ball_integrals(rule, f_values, rho_values, rho_infty, rho_minus, n_power):
    weights = rule.weights
    r_term = (np.e + np.linalg.norm(rule.nodes, axis=1)) ** (-n_power * rho_minus)
    return (np.dot(weights, f_values ** rho_values), np.dot(weights, f_values ** rho_infty),
            np.dot(weights, r_term))


def _test_function(rng, kind, center, radius, d):
    if kind == 'zero':
        return lambda y: np.zeros(len(y))

    if kind == 'constant':
        level = rng.random()
        return lambda y: np.full(len(y), level)

    if kind == 'power':
        decay = rng.uniform(0.1, 4.0)
        return lambda y: (np.e + np.linalg.norm(y, axis=1)) ** -decay

    bump_center = center + radius * rng.uniform(-1, 1, d)
    width = np.exp(rng.uniform(np.log(0.2), np.log(3.0)))
    return lambda y: np.exp(-np.linalg.norm(y - bump_center, axis=1) ** 2 / width ** 2)


FUNCTION_KINDS = ('bump', 'constant', 'power', 'zero')


def exponent_swap_check(rho, n_power, d=1, samples=200, seed=0, kinds=FUNCTION_KINDS):
    """Both exponent-swap inequalities for 0 ≤ F ≤ 1 on random balls E.

    With R(x) = (e + |x|)^(-N), the per-sample constant is the larger of

        (∫_E F^ρ(y) - ∫_E R^ρ_-) / ∫_E F^ρ_∞,
        (∫_E F^ρ_∞ - ∫_E R^ρ_-) / ∫_E F^ρ(y),

    clipped at zero.

    """
    if rho.p_infty is None or rho.p_infty <= 0:
        raise PreconditionError("rho needs a positive limit at infinity.")

    if n_power <= d / rho.p_minus:
        raise PreconditionError("N=%g must exceed d/rho_minus = %g." % (n_power, d / rho.p_minus))

    rng = np.random.default_rng(seed)
    ratios = np.empty(samples)

    for i in range(samples):
        direction = rng.standard_normal(d)
        center = direction / np.linalg.norm(direction) * np.exp(rng.uniform(np.log(0.1),
                                                                            np.log(30.0)))
        radius = np.exp(rng.uniform(np.log(0.1), np.log(3.0)))
        rule = centered_rule(center, radius, order=8, levels=3, panel_width=radius / 4)
        f = _test_function(rng, kinds[i % len(kinds)], center, radius, d)
        values = np.clip(f(rule.nodes), 0.0, 1.0)
        variable, limit, r_term = _ball_integrals(rule, values, rho(rule.nodes), rho.p_infty,
                                                  rho.p_minus, n_power)
        ratios[i] = max(_clipped_ratio(variable - r_term, limit),
                        _clipped_ratio(limit - r_term, variable))

    return BoundReport.from_ratios('exponent-swap', ratios, d=d, n_power=n_power,
                                   rho=rho.name)


def _clipped_ratio(numerator, denominator):
    if numerator <= 0:
        return 0.0

    return numerator / denominator if denominator > 0 else float('inf')
