#!/usr/bin/env python3
#
#  kernel.py
#
"""Kernel representation of the Gaussian Riesz potential.

    I_β f(x) = ∫ N(x, y) f(y) dy,

    N(x, y) = π^(-d/2) / Γ(β/2) ∫_0^1 (-log √(1-u))^(β/2-1)
              [e^(-|y - √(1-u) x|²/u) / u^(d/2) - e^(-|y|²)] du / (2(1-u)).

The u-integral is done by :func:`~gaussriesz.hermite.adaptive.integrate_unit`,
vectorized over all y of a batch. The outer y-integral uses a rule centered
at x, so the diagonal singularity sits at the graded end of the radial
panels and no node hits it.

"""

import logging
from dataclasses import dataclass
from typing import List

import numpy as np
from scipy.special import gamma

from ..geometry.admissible import admissibility_radius
from ..hermite.adaptive import integrate_unit
from ..hermite.polynomials import as_points
from ..hermite.quadrature import MeasureTag, centered_rule, gaussian_tail_radius
from .spectral import as_order


log = logging.getLogger(__name__)

KERNEL_TOL = 1e-8
OPERATOR_TOL = 1e-6
CHUNK = 256
# exponent above which e^(-|y|²)·expm1(E) is replaced by the direct difference
_EXPM1_LIMIT = 50.0


@dataclass(frozen=True)
class PairInvariants:
    """Inner products of a batch of (x, y) pairs, each of shape (m,)."""

    dim: int
    xx: np.ndarray
    yy: np.ndarray
    dd: np.ndarray
    dx: np.ndarray

    @classmethod
    def from_points(cls, xs, ys):
        delta = ys - xs
        return cls(xs.shape[1],
                   np.einsum('ij,ij->i', xs, xs),
                   np.einsum('ij,ij->i', ys, ys),
                   np.einsum('ij,ij->i', delta, delta),
                   np.einsum('ij,ij->i', delta, xs))

    @property
    def distance(self):
        return np.sqrt(self.dd)

    def shifted_sq(self, nodes):
        """|y - √(1-u) x|² at every (node, pair), shape (k, m)."""
        s = (nodes.u / (1 + np.sqrt(nodes.v)))[:, None]
        q = self.dd + 2 * s * self.dx + s ** 2 * self.xx
        return np.maximum(q, 0.0)

    def gaussian_factor(self, nodes, q=None):
        """log of e^(-|y - √(1-u) x|²/u) / u^(d/2)."""
        if q is None:
            q = self.shifted_sq(nodes)

        return -q / nodes.u[:, None] - 0.5 * self.dim * nodes.log_u[:, None]

    def mehler_difference(self, nodes):
        """ω(t) - ω(∞) in the u variable, evaluated without cancellation."""
        log_w = self.gaussian_factor(nodes)
        expo = log_w + self.yy
        tail = np.exp(-self.yy)
        small = tail * np.expm1(np.minimum(expo, _EXPM1_LIMIT))
        large = np.exp(np.minimum(log_w, 700.0)) - tail
        return np.where(expo < _EXPM1_LIMIT, small, large)


def kernel_prefactor(beta, d):
    return np.pi ** (-d / 2) / gamma(beta / 2)


def _kernel_integrand(beta, inv):
    def integrand(nodes):
        weight = nodes.t[:, None] ** (beta / 2 - 1) / (2 * nodes.v[:, None])
        return weight * inv.mehler_difference(nodes)

    return integrand


def riesz_kernel_pairs(beta, xs, ys, tol=KERNEL_TOL, chunk=CHUNK, max_panels=4000):
    """N(x_i, y_i) for paired (m, d) arrays; ``tol`` may be per pair.

    Coincident pairs yield +inf when β ≤ d (the kernel is singular there)
    and are integrated like any other pair otherwise.

    """
    beta = as_order(beta).beta
    xs = as_points(xs)
    ys = as_points(ys, xs.shape[1])
    xs = np.broadcast_to(xs, ys.shape)
    d = xs.shape[1]
    pref = kernel_prefactor(beta, d)
    tol = np.broadcast_to(np.asarray(tol, dtype=float), (len(ys),)) / pref
    out = np.empty(len(ys))

    for start in range(0, len(ys), chunk):
        sl = slice(start, start + chunk)
        inv = PairInvariants.from_points(xs[sl], ys[sl])
        diagonal = inv.dd == 0

        if beta <= d and diagonal.any():
            values = np.full(len(inv.dd), np.inf)
            keep = ~diagonal

            if keep.any():
                sub = PairInvariants(d, inv.xx[keep], inv.yy[keep], inv.dd[keep],
                                     inv.dx[keep])
                result = integrate_unit(_kernel_integrand(beta, sub), tol[sl][keep],
                                        max_panels=max_panels)
                values[keep] = result.value

            out[sl] = values
        else:
            result = integrate_unit(_kernel_integrand(beta, inv), tol[sl],
                                    max_panels=max_panels)
            out[sl] = result.value

    return out * pref


def riesz_kernel_values(beta, x, ys, tol=KERNEL_TOL, **kw):
    """N(x, y) for one x against an (n, d) array of y."""
    xp = as_points(x)
    return riesz_kernel_pairs(beta, xp, as_points(ys, xp.shape[1]), tol, **kw)


def riesz_kernel_eval(beta, x, y, tol=KERNEL_TOL):
    return float(riesz_kernel_values(beta, x, as_points(y), tol)[0])


def local_radius(x):
    """Radius d·m(x) of the admissible ball B_h(x)."""
    xp = as_points(x)[0]
    return len(xp) * admissibility_radius(xp)


def singular_rule(x, radius=None, order=8, levels=20, panel_width=0.5, angular=None,
                  tail_tol=1e-12):
    """Outer rule for the kernel route, centered at x.

    The default radius is |x| plus the radius outside of which γ_d has mass
    ``tail_tol``. The admissible-ball radius is a radial panel edge.

    """
    xp = as_points(x)[0]

    if radius is None:
        radius = float(np.linalg.norm(xp)) + gaussian_tail_radius(len(xp), tail_tol)

    return centered_rule(xp, radius, order=order, levels=levels, panel_width=panel_width,
                         angular=angular, breaks=[local_radius(xp)])


def _contributions(f, beta, x, rule, tol, kernel_tol):
    xp = as_points(x)[0]

    if rule is None:
        rule = singular_rule(xp)
    elif rule.measure is not MeasureTag.LEBESGUE:
        raise ValueError("The kernel route integrates against Lebesgue measure.")

    dist = np.linalg.norm(rule.nodes - xp, axis=1)
    keep = dist > 0

    if not keep.all():
        log.debug("Dropping %i rule node(s) on the diagonal.", (~keep).sum())

    nodes = rule.nodes[keep]
    weights = rule.weights[keep]
    values = np.asarray(f(nodes), dtype=float)
    mass = np.abs(weights * values).sum()

    if mass == 0:
        return np.zeros(len(nodes)), dist[keep]

    node_tol = tol / mass if kernel_tol is None else kernel_tol
    kernel = riesz_kernel_values(beta, xp, nodes, node_tol)
    return weights * values * kernel, dist[keep]


def riesz_apply_kernel(f, beta, x, rule=None, tol=OPERATOR_TOL, kernel_tol=None):
    """I_β f(x) = ∫ N(x, y) f(y) dy by outer quadrature of the kernel.

    Unless ``kernel_tol`` is given, the per-node kernel tolerance is chosen
    so that the accumulated kernel error stays below ``tol``.

    """
    terms, _ = _contributions(f, beta, x, rule, tol, kernel_tol)
    return float(terms.sum())


def riesz_split_apply(f, beta, x, rule=None, tol=OPERATOR_TOL, kernel_tol=None):
    """Return (local, global) parts of I_β f(x) split at B_h(x)."""
    terms, dist = _contributions(f, beta, x, rule, tol, kernel_tol)
    inside = dist < local_radius(x)
    return float(terms[inside].sum()), float(terms[~inside].sum())


def signed_permutation(x):
    """Return (r, g) with r = |x| sorted descending and g r = x.

    N(g x, g y) = N(x, y) for every signed permutation g, so kernel rows
    are only needed at the representatives r.

    """
    x = np.asarray(x, dtype=float)
    order = np.argsort(-np.abs(x), kind='stable')
    r = np.abs(x)[order]
    g = np.zeros((len(x), len(x)))
    g[order, np.arange(len(x))] = np.where(x[order] < 0, -1.0, 1.0)
    return r, g


@dataclass
class RieszOperatorTable:
    """Weighted kernel rows precomputed at a set of evaluation points.

    Points equal up to a signed permutation of coordinates share one row,
    computed on the rule centered at their representative. ``apply`` maps
    the row's offsets to each point and evaluates I_β f at all points for
    any f without touching the u-integrals again.

    """

    beta: float
    points: np.ndarray
    offsets: List[np.ndarray]
    kernels: List[np.ndarray]
    rep_index: np.ndarray
    transforms: np.ndarray

    @classmethod
    def build(cls, beta, points, tol=KERNEL_TOL, map_func=map, **rule_kw):
        beta = as_order(beta).beta
        points = as_points(points)
        reps, keys = [], {}
        rep_index = np.empty(len(points), dtype=int)
        transforms = np.empty((len(points), points.shape[1], points.shape[1]))

        for i, x in enumerate(points):
            r, transforms[i] = signed_permutation(x)
            key = tuple(np.round(r, 12))

            if key not in keys:
                keys[key] = len(reps)
                reps.append(r)

            rep_index[i] = keys[key]

        def row(r):
            rule = singular_rule(r, **rule_kw)
            offsets = rule.nodes - r
            keep = np.linalg.norm(offsets, axis=1) > 0
            kernel = riesz_kernel_values(beta, r, rule.nodes[keep], tol)
            return offsets[keep], rule.weights[keep] * kernel

        rows = list(map_func(row, reps))
        log.debug("Built Riesz operator table for beta=%g on %i points (%i rows).",
                  beta, len(points), len(reps))
        return cls(beta, points, [r[0] for r in rows], [r[1] for r in rows], rep_index,
                   transforms)

    def __len__(self):
        return len(self.points)

    @property
    def row_count(self):
        return len(self.kernels)

    def apply(self, f):
        out = np.empty(len(self.points))

        for i, (x, k, g) in enumerate(zip(self.points, self.rep_index, self.transforms)):
            nodes = x + self.offsets[k] @ g.T
            out[i] = np.dot(self.kernels[k], np.asarray(f(nodes), dtype=float))

        return out
