#!/usr/bin/env python3
#
#  admissible.py
#
"""Admissible (hyperbolic) balls and a covering family built from them.

B_h(x) is the ball of radius d·m(x) around x, m(x) = min(1, 1/|x|). Pairs
with y ∈ B_h(x) form the local region, all others the global region.

"""

import logging
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.spatial import cKDTree

from ..hermite.polynomials import as_points


log = logging.getLogger(__name__)


def admissibility_radius(x):
    """m(x) = min(1, 1/|x|)."""
    norm = float(np.linalg.norm(as_points(x)[0]))
    return 1.0 if norm <= 1 else 1.0 / norm


def admissibility_radii(points):
    """m(x) for every row of an (n, d) array."""
    norms = np.linalg.norm(as_points(points), axis=1)
    return 1.0 / np.maximum(norms, 1.0)


def in_local_region(x, y):
    """True iff |x - y| < d·m(x)."""
    xp = as_points(x)[0]
    yp = as_points(y, len(xp))[0]
    return bool(np.linalg.norm(xp - yp) < len(xp) * admissibility_radius(xp))


def local_mask(xs, ys):
    """Vectorized :func:`in_local_region` over paired (n, d) arrays."""
    xs = as_points(xs)
    ys = as_points(ys, xs.shape[1])
    return np.linalg.norm(xs - ys, axis=1) < xs.shape[1] * admissibility_radii(xs)


@dataclass(frozen=True)
class AdmissibleBall:
    center: np.ndarray
    radius: float

    def contains(self, points):
        return np.linalg.norm(as_points(points) - self.center, axis=1) < self.radius

    def dilate(self, factor):
        return AdmissibleBall(self.center, factor * self.radius)


def admissible_ball(x):
    xp = as_points(x)[0]
    return AdmissibleBall(xp, len(xp) * admissibility_radius(xp))


@dataclass(frozen=True)
class CoveringFamily:
    """Balls tiling the dyadic annuli 2^(k-1) ≤ |x| < 2^k, plus B(0, 1).

    ``overlap`` is the largest number of balls seen over a point, measured
    at build time; ``containment`` is C_d with B_h(x) ⊆ C_d·B for x ∈ B,
    bounded per ball from the ball's distance to the origin.

    """

    dim: int
    region_radius: float
    centers: np.ndarray
    radii: np.ndarray
    annulus: np.ndarray
    overlap: int
    containment: float
    core_radius: float = 1.0
    dilation: float = 2.0
    scale: float = 0.5

    def __len__(self):
        return len(self.radii)

    def ball(self, index):
        return AdmissibleBall(self.centers[index], float(self.radii[index]))

    @cached_property
    def _trees(self):
        # one tree per annulus; balls of an annulus share their radius
        trees = []

        for k in np.unique(self.annulus):
            members = self.annulus == k
            trees.append((cKDTree(self.centers[members]), float(self.radii[members][0])))

        return trees

    def counts(self, points, factor=1.0):
        """Number of closed balls (dilated by ``factor``) containing each point."""
        pts = as_points(points, self.dim)
        out = np.zeros(len(pts), dtype=int)

        for tree, radius in self._trees:
            out += tree.query_ball_point(pts, factor * radius, return_length=True)

        return out

    def check_cover(self, points):
        """Property i: B(0, 1) together with the balls 2B covers every point."""
        pts = as_points(points, self.dim)
        core = np.linalg.norm(pts, axis=1) < self.core_radius
        return core | (self.counts(pts, self.dilation) > 0)

    def gaussian_ratio(self):
        """Property iii: max over balls of sup/inf of e^(-|x|²) on the ball."""
        norms = np.linalg.norm(self.centers, axis=1)
        inner = np.maximum(norms - self.radii, 0.0)
        return float(np.exp(((norms + self.radii) ** 2 - inner ** 2).max()))

    def gaussian_ratio_bound(self):
        """e^(4c + 2c²), from radius c·2^(-k) and center norm below 2^k + 2c·2^(-k)."""
        return float(np.exp(4 * self.scale + 2 * self.scale ** 2))

    def c_prime(self):
        """c' with gaussian_ratio() ≤ e^(2d·c')."""
        return float(np.log(self.gaussian_ratio()) / (2 * self.dim))

    def contains_admissible(self, x, index):
        """Property iv for one ball: B_h(x) ⊆ C_d·B."""
        xp = as_points(x, self.dim)[0]
        reach = np.linalg.norm(xp - self.centers[index]) + self.dim * admissibility_radius(xp)
        return bool(reach <= self.containment * self.radii[index] * (1 + 1e-12))


def _annulus_lattice(k, d, c):
    radius = c * 2.0 ** -k
    # covering radius of the cubic lattice is h·√d/2; 2B must reach it
    h = 0.999 * 4 * radius / np.sqrt(d)
    reach = h * np.sqrt(d) / 2
    outer = 2.0 ** k + reach
    axis = np.arange(-np.floor(outer / h), np.floor(outer / h) + 1) * h
    grid = np.stack([g.ravel() for g in np.meshgrid(*[axis] * d, indexing='ij')], axis=-1)
    norms = np.linalg.norm(grid, axis=1)
    keep = (norms >= 2.0 ** (k - 1) - reach) & (norms < outer)
    return grid[keep], radius


def build_covering(region_radius, d, c=0.5, test_points=10 ** 4, seed=0):
    """Covering family for the ball of radius ``region_radius`` in R^d."""
    if region_radius <= 0:
        raise ValueError("Region radius must be positive.")

    levels = int(np.floor(np.log2(region_radius))) + 1 if region_radius >= 1 else 1
    centers, radii, annulus = [], [], []

    for k in range(1, levels + 1):
        pts, radius = _annulus_lattice(k, d, c)
        centers.append(pts)
        radii.append(np.full(len(pts), radius))
        annulus.append(np.full(len(pts), k))

    centers = np.concatenate(centers)
    radii = np.concatenate(radii)
    annulus = np.concatenate(annulus)

    norms = np.linalg.norm(centers, axis=1)
    far = np.minimum(1.0, 1.0 / np.maximum(norms - radii, 1e-300))
    containment = float(((radii + d * far) / radii).max())

    family = CoveringFamily(d, float(region_radius), centers, radii, annulus, 0, containment,
                            scale=c)
    rng = np.random.default_rng(seed)
    sample = np.concatenate([uniform_ball(rng, test_points, d, 2.0 ** levels), centers])
    overlap = int(family.counts(sample).max())
    log.debug("Covering of radius %g in d=%i: %i balls, overlap %i, C_d %.3g.",
              region_radius, d, len(radii), overlap, containment)
    return CoveringFamily(d, float(region_radius), centers, radii, annulus, overlap,
                          containment, scale=c)


def uniform_ball(rng, n, d, radius):
    """n points uniformly distributed in the ball of the given radius."""
    dirs = rng.standard_normal((n, d))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    return dirs * radius * rng.random((n, 1)) ** (1.0 / d)
