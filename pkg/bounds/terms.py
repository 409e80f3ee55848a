#!/usr/bin/env python3
#
#  terms.py
#
"""Kernel decomposition terms and the local-part bounds.

Differentiating ω(t) - ω(∞) = -∫_t^∞ ∂_s ω ds and exchanging the order of
integration gives

    |N(x, y)| ≤ c_{β,d} ∫_0^∞ s^(β/2) |∂_s ω(s, x, y)| ds,
    c_{β,d} = 1 / (π^(d/2) Γ(β/2 + 1)),

and bounding |∂_s ω| term by term in the u variable yields I + 2·II + III
with

    I   = ∫ t^(β/2) e^(-q/u) u^(-d/2) · √q·|x| / (u √(1-u)) du
    II  = ∫ t^(β/2) e^(-q/u) u^(-d/2) · q / (2u²) du
    III = ∫ t^(β/2) e^(-q/u) u^(-d/2) · d / (2u) du

where q = |y - √(1-u) x|² and t = -log √(1-u).

"""

import logging

import numpy as np
from scipy.special import gamma

from ..hermite.adaptive import integrate_unit
from ..hermite.polynomials import as_points
from ..riesz.kernel import PairInvariants, riesz_kernel_pairs
from ..riesz.spectral import as_order
from .geometry import sample_pairs
from .lemmas import expineq_constant, lemma_gamma_closed_form
from .report import BoundReport


log = logging.getLogger(__name__)

TERMS_RTOL = 1e-10
KERNEL_RTOL = 1e-8
CHUNK = 256


def decomposition_constant(beta, d):
    """c_{β,d} in |N| ≤ c_{β,d}·(I + 2·II + III)."""
    return 1.0 / (np.pi ** (d / 2) * gamma(beta / 2 + 1))


def _pairs(xs, ys):
    xs = as_points(xs)
    ys = as_points(ys, xs.shape[1])
    return np.broadcast_to(xs, ys.shape), ys


def _batched(xs, ys, build, width, rtol, max_panels):
    out = np.empty((len(ys), width))

    for start in range(0, len(ys), CHUNK):
        sl = slice(start, start + CHUNK)
        integrand = build(xs[sl], ys[sl])
        result = integrate_unit(integrand, 1e-300, rtol=rtol, max_panels=max_panels)
        out[sl] = result.value.reshape(width, -1).T

    return out


def decomposition_terms(beta, xs, ys, rtol=TERMS_RTOL, max_panels=4000):
    """(I, II, III) for paired points, each of shape (m,)."""
    beta = as_order(beta).beta
    xs, ys = _pairs(xs, ys)

    def build(bx, by):
        inv = PairInvariants.from_points(bx, by)
        xnorm = np.sqrt(inv.xx)

        def integrand(nodes):
            q = inv.shifted_sq(nodes)
            u = nodes.u[:, None]
            base = nodes.t[:, None] ** (beta / 2) * np.exp(inv.gaussian_factor(nodes, q))
            first = base * np.sqrt(q) * xnorm / (u * np.sqrt(nodes.v)[:, None])
            second = base * q / (2 * u ** 2)
            third = base * inv.dim / (2 * u)
            return np.concatenate([first, second, third], axis=1)

        return integrand

    out = _batched(xs, ys, build, 3, rtol, max_panels)
    return out[:, 0], out[:, 1], out[:, 2]


def term_I(beta, x, y):
    return float(decomposition_terms(beta, x, y)[0][0])


def term_II(beta, x, y):
    return float(decomposition_terms(beta, x, y)[1][0])


def term_III(beta, x, y):
    return float(decomposition_terms(beta, x, y)[2][0])


def aux_kernel_pairs(beta, xs, ys, rtol=TERMS_RTOL, max_panels=4000):
    """(K2, G2, K3) for paired points with x ≠ y."""
    beta = as_order(beta).beta
    xs, ys = _pairs(xs, ys)
    d = xs.shape[1]
    dist = np.linalg.norm(xs - ys, axis=1)

    if np.any(dist == 0):
        raise ValueError("Auxiliary kernels are singular at x = y.")

    def build(bx, by):
        half_sq = np.einsum('ij,ij->i', bx - by, bx - by) / 2

        def integrand(nodes):
            gauss = np.exp(-half_sq / nodes.u[:, None] - d / 2 * nodes.log_u[:, None])
            t = nodes.t[:, None]
            return np.concatenate([t ** (beta / 2 - 1) * gauss, t ** (beta / 2) * gauss],
                                  axis=1)

        return integrand

    out = _batched(xs, ys, build, 2, rtol, max_panels)
    k3 = (np.linalg.norm(xs, axis=1) + 1) / dist ** (d - 1)
    return out[:, 0], out[:, 1], k3


def aux_kernels(x, y, beta):
    k2, g2, k3 = aux_kernel_pairs(beta, x, y)
    return float(k2[0]), float(g2[0]), float(k3[0])


def g2_holder_constant(beta, d):
    """C' with G2(z) ≤ C'/|z|^(d-1), from Hölder with exponents 3 and 3/2."""
    return (expineq_constant(d - 1, 0.5) *
            lemma_gamma_closed_form(3 * beta / 2 + 1) ** (1 / 3) * 4 ** (2 / 3))


def master_decomposition_check(beta, d=1, samples=1000, seed=0, region='mixed'):
    """Check |N| ≤ c_{β,d}(I + 2·II + III) at sampled pairs.

    The metadata carries the empirical constant of the plain sum I + II + III.

    """
    rng = np.random.default_rng(seed)
    xs, ys = sample_pairs(rng, samples, d, region)
    first, second, third = decomposition_terms(beta, xs, ys)
    rhs = decomposition_constant(beta, d) * (first + 2 * second + third)
    kernel = np.abs(riesz_kernel_pairs(beta, xs, ys, tol=KERNEL_RTOL * rhs))

    with np.errstate(divide='ignore', invalid='ignore'):
        plain = float(np.nanmax(kernel / (first + second + third)))

    log.debug("Master decomposition beta=%g d=%i: plain-sum constant %g.", beta, d, plain)
    return BoundReport.from_sides('master-decomposition', kernel, rhs, bound=1.0,
                                  rtol=1e-6, beta=beta, d=d, region=region,
                                  plain_sum_constant=plain)


def local_bound_check(beta, d=1, samples=1000, seed=0):
    """Return (|N| ≤ C(K3 + K2) report, G2·|x-y|^(d-1) ≤ C' report) on local pairs."""
    rng = np.random.default_rng(seed)
    xs, ys = sample_pairs(rng, samples, d, 'local')
    k2, g2, k3 = aux_kernel_pairs(beta, xs, ys)
    rhs = k3 + k2
    kernel = np.abs(riesz_kernel_pairs(beta, xs, ys, tol=KERNEL_RTOL * rhs))
    local = BoundReport.from_sides('local-part', kernel, rhs, beta=beta, d=d)

    c_prime = g2_holder_constant(beta, d)
    scaled = g2 * np.linalg.norm(xs - ys, axis=1) ** (d - 1)
    holder = BoundReport.from_sides('local-G2', scaled, np.full(len(scaled), c_prime),
                                    bound=1.0, tol=1e-9 * c_prime, beta=beta, d=d,
                                    c_prime=c_prime)
    return local, holder


def local_region_check(samples=1000, d=1, seed=0, u_per_pair=16):
    """|y - √(1-u) x|² ≥ |x - y|² - 2du at local pairs and uniform u ∈ (0, 1)."""
    rng = np.random.default_rng(seed)
    xs, ys = sample_pairs(rng, samples, d, 'local')
    xs = np.repeat(xs, u_per_pair, axis=0)
    ys = np.repeat(ys, u_per_pair, axis=0)
    u = rng.random(len(xs))
    shifted = np.linalg.norm(ys - np.sqrt(1 - u)[:, None] * xs, axis=1) ** 2
    lower = np.linalg.norm(xs - ys, axis=1) ** 2 - 2 * d * u
    return BoundReport.from_sides('local-region', lower, shifted, bound=1.0, tol=1e-12, d=d)
