#!/usr/bin/env python3
#
#  geometry.py
#
"""Global-part geometry of the Riesz kernel and region-conditioned samplers.

For a pair (x, y) let a = |x|² + |y|², b = 2⟨x, y⟩ and

    u(t) = |y - √(1-t) x|² / t = a/t - b·√(1-t)/t - |x|²,   0 < t ≤ 1.

For b > 0 the minimum of u over (0, 1] sits at t0 < 1, for b ≤ 0 at t = 1.

"""

import logging
from dataclasses import dataclass

import numpy as np

from ..geometry.admissible import admissibility_radii, local_mask
from ..hermite.polynomials import as_points
from .report import BoundReport


log = logging.getLogger(__name__)

X_SCALE = 2.0
X_MAX = 5.0
MIN_SEPARATION = 1e-3
MAX_ROUNDS = 1000
REGIONS = ('mixed', 'local', 'global', 'b_nonpos', 'b_pos', 'b_pos_near', 'b_pos_far')


class DegenerateGeometryError(ValueError):
    pass


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class KernelGeometry:
    a: float
    b: float
    t0: float
    u_t0: float


def _root_term(xp, yp):
    """√(a² - b²) = |x - y|·|x + y|, free of cancellation."""
    return float(np.linalg.norm(xp - yp) * np.linalg.norm(xp + yp))


def kernel_geometry(x, y):
    xp = as_points(x)[0]
    yp = as_points(y, len(xp))[0]
    xx, yy = float(xp @ xp), float(yp @ yp)
    a = xx + yy

    if a == 0:
        raise DegenerateGeometryError("Kernel geometry is undefined at x = y = 0.")

    root = _root_term(xp, yp)
    return KernelGeometry(a, 2 * float(xp @ yp), 2 * root / (a + root),
                          (yy - xx) / 2 + root / 2)


def u_of_t(t, x, y):
    t = np.asarray(t, dtype=float)

    if np.any(t <= 0) or np.any(t > 1):
        raise ValueError("u(t) is defined for 0 < t <= 1.")

    xp = as_points(x)[0]
    yp = as_points(y, len(xp))[0]
    xx = float(xp @ xp)
    a = xx + float(yp @ yp)
    b = 2 * float(xp @ yp)
    return a / t - b * np.sqrt(1 - t) / t - xx


def pair_geometry(xs, ys):
    """(t0, u(t0), b) for paired (n, d) arrays."""
    xx = np.einsum('ij,ij->i', xs, xs)
    yy = np.einsum('ij,ij->i', ys, ys)
    root = np.linalg.norm(xs - ys, axis=1) * np.linalg.norm(xs + ys, axis=1)
    t0 = 2 * root / (xx + yy + root)
    return t0, (yy - xx) / 2 + root / 2, 2 * np.einsum('ij,ij->i', xs, ys)


def t0_minimizer_check(x, y, grid_size=2000):
    """Grid search of u over log-spaced t against the closed-form minimizer."""
    geo = kernel_geometry(x, y)

    if geo.b < 0:
        raise PreconditionError("For b < 0 the minimum of u sits at t = 1, not at t0.")

    t_min = min(geo.t0 / 100, 1e-3)
    grid = np.geomspace(t_min, 1.0, grid_size)
    values = u_of_t(grid, x, y)
    cell = np.log(grid[1] / grid[0])
    best = int(np.argmin(values))
    margin = geo.u_t0 - float(values[best])
    off_grid = abs(np.log(grid[best] / geo.t0)) > cell * (1 + 1e-9)
    violations = int(margin > 1e-9) + int(off_grid)
    return BoundReport.from_ratios('t0-minimizer', [geo.u_t0 / max(values[best], 1e-300)],
                                   violations=violations, worst_margin=margin,
                                   t0=geo.t0, u_t0=geo.u_t0, grid_min=float(values[best]),
                                   grid_argmin=float(grid[best]))


def _directions(rng, n, d):
    dirs = rng.standard_normal((n, d))
    return dirs / np.linalg.norm(dirs, axis=1, keepdims=True)


def region_mask(xs, ys, region):
    """Membership of each pair in one of :data:`REGIONS`.

    Boundary cases |x| = 1 or |x - y| = 1 belong to ``b_pos_near``.

    """
    local = local_mask(xs, ys)
    b = np.einsum('ij,ij->i', xs, ys)
    near = (np.linalg.norm(xs, axis=1) <= 1) | (np.linalg.norm(xs - ys, axis=1) <= 1)

    masks = {
        'mixed': np.ones(len(xs), dtype=bool),
        'local': local,
        'global': ~local,
        'b_nonpos': ~local & (b <= 0),
        'b_pos': ~local & (b > 0),
        'b_pos_near': ~local & (b > 0) & near,
        'b_pos_far': ~local & (b > 0) & ~near,
    }

    try:
        return masks[region]
    except KeyError:
        raise ValueError("Unknown region '%s' (known: %s)." % (region, ", ".join(REGIONS)))


def _local_proposal(rng, xs):
    n, d = xs.shape
    radius = d * admissibility_radii(xs)
    return xs + _directions(rng, n, d) * (rng.random((n, 1)) * radius[:, None])


def _propose(rng, n, d, region):
    xs = X_SCALE * rng.standard_normal((n, d))
    ys = X_SCALE * rng.standard_normal((n, d))

    if region == 'local':
        ys = _local_proposal(rng, xs)
    elif region == 'mixed':
        half = n // 2
        ys[:half] = _local_proposal(rng, xs[:half])
    elif region == 'b_pos_near':
        half = n // 2
        xs[:half] = _directions(rng, half, d) * rng.random((half, 1)) ** (1 / d)
        ys[half:] = xs[half:] + _directions(rng, n - half, d) * rng.random((n - half, 1))

    if region.startswith('b_'):
        b = np.einsum('ij,ij->i', xs, ys)
        flip = (b > 0) if region == 'b_nonpos' else (b < 0)
        xx = np.maximum(np.einsum('ij,ij->i', xs, xs), 1e-300)
        ys[flip] -= (2 * b[flip] / xx[flip])[:, None] * xs[flip]

    return xs, ys


def sample_pairs(rng, n, d, region='mixed'):
    """n seeded pairs with |x| ≤ 5 and |x - y| ≥ 1e-3 in the named region."""
    region_mask(np.zeros((0, d)), np.zeros((0, d)), region)
    xs, ys = [], []
    found = 0

    for _ in range(MAX_ROUNDS):
        px, py = _propose(rng, max(n, 64), d, region)
        keep = ((np.linalg.norm(px, axis=1) <= X_MAX) &
                (np.linalg.norm(px - py, axis=1) >= MIN_SEPARATION) &
                region_mask(px, py, region))
        xs.append(px[keep])
        ys.append(py[keep])
        found += int(keep.sum())

        if found >= n:
            break
    else:
        raise PreconditionError("Region '%s' in d=%i is too rare for the sampler." % (region, d))

    return np.concatenate(xs)[:n], np.concatenate(ys)[:n]


def phib0_check(x, y, t_samples=100, seed=0):
    """e^(-u(t))/t^(d/2) ≤ 2^d e^(-u(t0))/t0^(d/2) at sampled t ∈ (0, 1], in log space."""
    xp = as_points(x)[0]
    d = len(xp)
    geo = kernel_geometry(xp, y)

    if geo.b <= 0:
        raise PreconditionError("The t0 comparison needs b(x, y) > 0.")

    rng = np.random.default_rng(seed)
    ts = np.append(np.exp(rng.uniform(np.log(1e-4 * geo.t0), 0.0, t_samples - 1)), geo.t0)
    lhs = -u_of_t(ts, xp, y) - d / 2 * np.log(ts)
    rhs = d * np.log(2) - geo.u_t0 - d / 2 * np.log(geo.t0)
    excess = lhs - rhs
    return BoundReport.from_ratios('phib0', np.exp(excess),
                                   violations=int((excess > 1e-12).sum()),
                                   worst_margin=float(excess.max()), d=d, t0=geo.t0)


def phib0_batch(samples=1000, d=1, t_samples=100, seed=0):
    """:func:`phib0_check` over seeded global pairs with b > 0."""
    rng = np.random.default_rng(seed)
    xs, ys = sample_pairs(rng, samples, d, 'b_pos')
    reports = [phib0_check(x, y, t_samples, seed + i) for i, (x, y) in enumerate(zip(xs, ys))]
    return BoundReport.from_ratios('phib0', [r.constant for r in reports],
                                   violations=sum(r.violations for r in reports),
                                   worst_margin=max(r.worst_margin for r in reports),
                                   d=d, pairs=samples, t_samples=t_samples)


def t0_minimizer_batch(samples=1000, d=1, grid_size=2000, seed=0):
    rng = np.random.default_rng(seed)
    xs, ys = sample_pairs(rng, samples, d, 'b_pos')
    reports = [t0_minimizer_check(x, y, grid_size) for x, y in zip(xs, ys)]
    return BoundReport.from_ratios('t0-minimizer', [r.constant for r in reports],
                                   violations=sum(r.violations for r in reports),
                                   worst_margin=max(r.worst_margin for r in reports), d=d)


def t0_asymptotics_check(samples=10 ** 4, d=1, seed=0):
    """t0·|x+y|/|x-y| ∈ [1, 4] and |x+y|^(-d)/t0^(d/2) ≤ 1 on global pairs with b > 0."""
    rng = np.random.default_rng(seed)
    xs, ys = sample_pairs(rng, samples, d, 'b_pos')
    t0, _, _ = pair_geometry(xs, ys)
    plus = np.linalg.norm(xs + ys, axis=1)
    minus = np.linalg.norm(xs - ys, axis=1)
    ratio = t0 * plus / minus
    power = plus ** -d / t0 ** (d / 2)
    slack = 1e-12
    violations = int(((ratio < 1 - slack) | (ratio > 4 + slack) | (power > 1 + slack)).sum())
    log.debug("t0 ratio range [%g, %g], power sup %g.", ratio.min(), ratio.max(), power.max())
    return BoundReport.from_ratios('t0-asymptotics', power, violations=violations,
                                   worst_margin=float(max(ratio.max() - 4, 1 - ratio.min(),
                                                          power.max() - 1)),
                                   d=d, ratio_min=float(ratio.min()),
                                   ratio_max=float(ratio.max()))
