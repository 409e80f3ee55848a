#!/usr/bin/env python3
#
#  quadrature.py
#
"""Quadrature rules against the Gaussian measure or Lebesgue measure.

Three constructions are provided:

* :func:`gaussian_rule` - tensor Gauss-Hermite rule, normalized so that the
  weights integrate against the probability measure γ_d;
* :func:`box_rule` - tensor composite Gauss-Legendre rule on a box;
* :func:`centered_rule` - polar/spherical rule around a point with radial
  panels graded toward the center, for integrands with a point singularity.

"""

import enum
import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import roots_hermite
from scipy.stats import chi2

from .polynomials import as_points


log = logging.getLogger(__name__)
DEFAULT_NODE_BUDGET = 10 ** 6


class ResourceError(MemoryError):
    pass


class MeasureTag(enum.Enum):
    GAUSSIAN = 'gaussian'
    LEBESGUE = 'lebesgue-box'


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    measure: MeasureTag
    radius: Optional[float] = None
    center: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.nodes.ndim != 2:
            raise ValueError("Rule nodes must have shape (n, d).")

        if len(self.nodes) != len(self.weights):
            raise ValueError("Rule has %i nodes but %i weights." % (len(self.nodes),
                                                                   len(self.weights)))

    @property
    def dim(self):
        return self.nodes.shape[1]

    def __len__(self):
        return len(self.weights)

    def gaussian_weights(self):
        """Weights for integrating against γ_d.

        Lebesgue-tagged rules get the density π^(-d/2) e^(-|x|²) folded in.

        """
        if self.measure is MeasureTag.GAUSSIAN:
            return self.weights

        sq = np.einsum('ij,ij->i', self.nodes, self.nodes)
        return self.weights * np.exp(-sq) * np.pi ** (-self.dim / 2)

    def integrate(self, values):
        return float(np.dot(self.weights, values))

    def evaluate(self, f):
        return np.asarray(f(self.nodes), dtype=float)

    def restrict(self, mask):
        """Sub-rule on the nodes selected by a boolean mask."""
        return QuadratureRule(self.nodes[mask], self.weights[mask], self.measure,
                              radius=self.radius, center=self.center)


def gaussian_tail_radius(d, tail_tol):
    """Radius R with γ_d(|x| > R) = tail_tol."""
    if not 0 < tail_tol < 1:
        raise ValueError("Tail tolerance must lie in (0, 1), got %g." % tail_tol)

    return float(np.sqrt(chi2.isf(tail_tol, d) / 2))


def _check_budget(count, budget):
    if count > budget:
        raise ResourceError("Rule needs %i nodes, budget is %i." % (count, budget))


def tensor_product(axes_nodes, axes_weights):
    """Combine per-axis 1-D rules into a tensor rule (nodes (n, d), weights (n,))."""
    grids = np.meshgrid(*axes_nodes, indexing='ij')
    wgrids = np.meshgrid(*axes_weights, indexing='ij')
    nodes = np.stack([g.ravel() for g in grids], axis=-1)
    weights = np.prod(np.stack([w.ravel() for w in wgrids]), axis=0)
    return nodes, weights


def gaussian_rule(points_per_axis, d, budget=DEFAULT_NODE_BUDGET):
    """Tensor Gauss-Hermite rule for γ_d, exact to per-axis degree 2n - 1."""
    if points_per_axis < 1 or d < 1:
        raise ValueError("points_per_axis and d must be positive.")

    _check_budget(points_per_axis ** d, budget)
    x, w = roots_hermite(points_per_axis)
    w = w / np.sqrt(np.pi)
    nodes, weights = tensor_product([x] * d, [w] * d)
    # symmetric rules put the middle node at a tiny non-zero offset
    nodes[np.abs(nodes) < 1e-15] = 0.0
    return QuadratureRule(nodes, weights, MeasureTag.GAUSSIAN)


def composite_legendre(a, b, panels, order):
    """Composite Gauss-Legendre rule on [a, b] with equal panels."""
    x, w = leggauss(order)
    edges = np.linspace(a, b, panels + 1)
    half = np.diff(edges) / 2
    mid = (edges[:-1] + edges[1:]) / 2
    nodes = (mid[:, None] + half[:, None] * x).ravel()
    weights = (half[:, None] * w).ravel()
    return nodes, weights


def box_rule(radius, d, panels=16, order=8, center=None, budget=DEFAULT_NODE_BUDGET):
    """Tensor composite Gauss-Legendre rule on the box center + [-radius, radius]^d."""
    if radius <= 0:
        raise ValueError("Box radius must be positive.")

    center = np.zeros(d) if center is None else np.asarray(center, dtype=float).ravel()
    _check_budget((panels * order) ** d, budget)
    axes = [composite_legendre(c - radius, c + radius, panels, order) for c in center]
    nodes, weights = tensor_product([a[0] for a in axes], [a[1] for a in axes])
    return QuadratureRule(nodes, weights, MeasureTag.LEBESGUE, radius=float(radius),
                          center=center)


def graded_radial_rule(radius, order=8, levels=20, panel_width=0.5, breaks=()):
    """1-D rule on (0, radius] with panels graded geometrically toward 0.

    The graded zone ends at the smallest of 1, radius and any requested
    breakpoint; beyond it panels are at most ``panel_width`` wide and every
    breakpoint in ``breaks`` is a panel edge.

    """
    breaks = sorted(b for b in breaks if 0 < b < radius)
    r0 = min([1.0, radius] + breaks)
    edges = [r0 * 2.0 ** -k for k in range(levels, -1, -1)]
    edges.insert(0, 0.0)

    for stop in breaks + [radius]:
        start = edges[-1]

        if stop <= start:
            continue

        count = max(1, int(np.ceil((stop - start) / panel_width)))
        edges.extend(np.linspace(start, stop, count + 1)[1:])

    edges = np.asarray(edges)
    x, w = leggauss(order)
    half = np.diff(edges) / 2
    mid = (edges[:-1] + edges[1:]) / 2
    return (mid[:, None] + half[:, None] * x).ravel(), (half[:, None] * w).ravel()


def sphere_directions(d, angular=None):
    """Unit directions and surface weights for S^(d-1), d = 1, 2 or 3."""
    if d == 1:
        return np.array([[-1.0], [1.0]]), np.array([1.0, 1.0])

    if d == 2:
        m = angular or 32
        theta = 2 * np.pi * (np.arange(m) + 0.5) / m
        return (np.stack([np.cos(theta), np.sin(theta)], axis=-1),
                np.full(m, 2 * np.pi / m))

    if d == 3:
        m = angular or 24
        mu, wmu = leggauss(max(4, m // 2))
        theta = 2 * np.pi * (np.arange(m) + 0.5) / m
        mm, tt = np.meshgrid(mu, theta, indexing='ij')
        ww = np.outer(wmu, np.full(m, 2 * np.pi / m))
        s = np.sqrt(1 - mm ** 2)
        dirs = np.stack([s * np.cos(tt), s * np.sin(tt), mm], axis=-1).reshape(-1, 3)
        return dirs, ww.ravel()

    raise ValueError("Centered rules support d = 1, 2, 3, not %i." % d)


def centered_rule(center, radius, order=8, levels=20, panel_width=0.5, angular=None,
                  breaks: Sequence[float] = (), budget=DEFAULT_NODE_BUDGET):
    """Lebesgue rule on the ball B(center, radius) in polar coordinates.

    No node coincides with ``center``; the radial panels are graded toward
    it, which resolves integrable singularities of the form |x - y|^(-s),
    s < d, and logarithms.

    """
    center = as_points(center)[0]
    d = center.shape[0]
    r, wr = graded_radial_rule(radius, order, levels, panel_width, breaks)
    dirs, wd = sphere_directions(d, angular)
    _check_budget(len(r) * len(wd), budget)
    nodes = center + (r[:, None, None] * dirs[None, :, :]).reshape(-1, d)
    weights = (wr[:, None] * r[:, None] ** (d - 1) * wd[None, :]).ravel()
    return QuadratureRule(nodes, weights, MeasureTag.LEBESGUE, radius=float(radius),
                          center=center)
