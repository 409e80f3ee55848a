#!/usr/bin/env python3
#
#  maximal.py
#
"""Discrete Hardy-Littlewood maximal function on a uniform box grid."""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Tuple

import numpy as np
from scipy.spatial import cKDTree

from ..hermite.polynomials import as_points
from ..hermite.quadrature import centered_rule
from .admissible import admissibility_radius


log = logging.getLogger(__name__)


class EmptyBallsError(ValueError):
    pass


@dataclass
class GridFunction:
    """Values of a function on the tensor grid ``axes[0] × ... × axes[d-1]``."""

    axes: Tuple[np.ndarray, ...]
    values: np.ndarray = field(repr=False)

    @classmethod
    def sample(cls, f, center, half_width, spacing):
        center = as_points(center)[0]
        count = int(np.floor(half_width / spacing))
        offsets = np.arange(-count, count + 1) * spacing
        axes = tuple(c + offsets for c in center)
        grid = cls(axes, np.zeros((len(offsets),) * len(center)))
        grid.values = np.asarray(f(grid.nodes), dtype=float).reshape(grid.shape)
        return grid

    @property
    def dim(self):
        return len(self.axes)

    @property
    def shape(self):
        return tuple(len(a) for a in self.axes)

    @property
    def spacing(self):
        return float(self.axes[0][1] - self.axes[0][0])

    @property
    def half_width(self):
        return float(min((a[-1] - a[0]) / 2 for a in self.axes))

    @cached_property
    def nodes(self):
        grids = np.meshgrid(*self.axes, indexing='ij')
        return np.stack([g.ravel() for g in grids], axis=-1)

    @cached_property
    def tree(self):
        return cKDTree(self.nodes)

    def contains(self, x):
        xp = as_points(x, self.dim)[0]
        return all(a[0] <= c <= a[-1] for a, c in zip(self.axes, xp))


def dyadic_radii(spacing, half_width):
    """Radii spacing/2, spacing, 2·spacing, ... up to 2·half_width.

    The first radius only reaches the node's own cell.

    """
    count = int(np.floor(np.log2(4 * half_width / spacing))) + 1
    return spacing / 2 * 2.0 ** np.arange(count)


def maximal_function(g, x, radii=None):
    """max over r of the mean of |g| over grid nodes in the closed ball B(x, r)."""
    xp = as_points(x, g.dim)[0]

    if not g.contains(xp):
        raise ValueError("Point %s lies outside the grid box." % (xp,))

    if radii is None:
        radii = dyadic_radii(g.spacing, g.half_width)

    flat = np.abs(g.values).ravel()
    best = None

    for r in radii:
        idx = g.tree.query_ball_point(xp, r)

        if not idx:
            continue

        mean = flat[idx].mean()
        best = mean if best is None else max(best, mean)

    if best is None:
        raise EmptyBallsError("No grid node within the given radii of %s." % (xp,))

    return float(best)


def local_part_domination(f, x, resolution=32, order=8, levels=20):
    """Return the two sides of the local-part maximal estimate at x.

    lhs = (1 + |x|) ∫_{B_h(x)} |f(y)| / |x - y|^(d-1) dy
    rhs = 𝓜(f·χ_{B_h(x)})(x) on a grid of spacing radius/resolution

    """
    xp = as_points(x)[0]
    d = len(xp)
    radius = d * admissibility_radius(xp)
    rule = centered_rule(xp, radius, order=order, levels=levels)
    dist = np.linalg.norm(rule.nodes - xp, axis=1)
    integral = np.dot(rule.weights / dist ** (d - 1), np.abs(f(rule.nodes)))
    lhs = (1 + np.linalg.norm(xp)) * integral

    def restricted(y):
        inside = np.linalg.norm(y - xp, axis=1) < radius
        return np.where(inside, np.abs(f(y)), 0.0)

    grid = GridFunction.sample(restricted, xp, 2 * radius, radius / resolution)
    return float(lhs), maximal_function(grid, xp)
