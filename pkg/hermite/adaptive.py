#!/usr/bin/env python3
#
#  adaptive.py
#
"""Adaptive Gauss-Legendre integration over the unit interval (0, 1).

Integrands are handed a :class:`UnitNodes` record instead of bare abscissae.
The half [0, 1/2] is parametrized by ``u`` and the half [1/2, 1] by
``v = 1 - u``, so both endpoints are approached without cancellation and
quantities like ``log(1 - u)`` stay accurate right up to u = 1.

Initial panels are dyadic toward both endpoints. Each panel is estimated
with a fixed-order rule on itself and on its two halves; panels whose
difference is too large are bisected until the summed error estimate meets
the tolerance, or the panel budget runs out.

Integrands may be vectorized over a batch of ``m`` items: they return an
array of shape ``(k,)`` or ``(k, m)`` for ``k`` nodes, and the tolerance may
be given per item.

"""

import logging
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss


log = logging.getLogger(__name__)

SIDE_U = 0
SIDE_V = 1


class ConvergenceError(ArithmeticError):
    pass


@dataclass(frozen=True)
class UnitNodes:
    """Abscissae in (0, 1) with accurate companions.

    ``t`` is -log(sqrt(1 - u)), the semigroup time for u = 1 - e^(-2t).

    """

    u: np.ndarray
    v: np.ndarray
    t: np.ndarray
    log_u: np.ndarray

    @classmethod
    def from_side(cls, side, s):
        s = np.asarray(s, dtype=float)
        side = np.broadcast_to(side, s.shape)
        on_u = side == SIDE_U
        u = np.where(on_u, s, 1.0 - s)
        v = np.where(on_u, 1.0 - s, s)
        t = np.where(on_u, -0.5 * np.log1p(-np.where(on_u, s, 0.0)),
                     -0.5 * np.log(np.where(on_u, 0.5, s)))
        log_u = np.where(on_u, np.log(np.where(on_u, s, 0.5)),
                         np.log1p(-np.where(on_u, 0.0, s)))
        return cls(u, v, t, log_u)


@dataclass
class UnitIntegral:
    value: np.ndarray
    error: np.ndarray
    panels: int


def dyadic_edges(levels):
    """Edges 0, 2^-(levels+1), ..., 1/4, 1/2 of one half-interval."""
    return np.concatenate([[0.0], 0.5 ** np.arange(levels + 1, 0, -1)])


class _PanelSet:
    def __init__(self, integrand, order):
        self.integrand = integrand
        self.x, self.w = leggauss(order)

    def sums(self, side, a, b):
        """Rule value of every panel, shape (P, m)."""
        half = (b - a) / 2
        mid = (a + b) / 2
        s = mid[:, None] + half[:, None] * self.x
        nodes = UnitNodes.from_side(np.repeat(side, len(self.x)), s.ravel())
        vals = np.asarray(self.integrand(nodes), dtype=float)
        vals = vals.reshape(len(a), len(self.x), -1)
        return np.einsum('pnm,n->pm', vals, self.w) * half[:, None]

    def children(self, side, a, b):
        mid = (a + b) / 2
        left = self.sums(side, a, mid)
        right = self.sums(side, mid, b)
        return left, right


def integrate_unit(integrand, tol, sides=(SIDE_U, SIDE_V), order=16, levels=40,
                   max_panels=4000, rtol=1e-12):
    """Integrate over the parts of (0, 1) named by ``sides``.

    ``SIDE_U`` is u ∈ (0, 1/2], ``SIDE_V`` is u ∈ [1/2, 1). Returns a
    :class:`UnitIntegral` whose ``value`` and ``error`` have one entry per
    batch item. Raises :class:`ConvergenceError` when ``max_panels`` is
    exceeded before every item meets ``max(tol, rtol * Σ|panel|)``.

    """
    edges = dyadic_edges(levels)
    side = np.repeat(np.asarray(sides), len(edges) - 1)
    a = np.tile(edges[:-1], len(sides))
    b = np.tile(edges[1:], len(sides))

    panels = _PanelSet(integrand, order)
    whole = panels.sums(side, a, b)
    left, right = panels.children(side, a, b)
    tol = np.asarray(tol, dtype=float)
    rounds = 0

    while True:
        fine = left + right
        err = np.abs(whole - fine)

        if not np.all(np.isfinite(err)):
            raise ConvergenceError("Integrand is not finite on (0, 1).")

        allowed = np.maximum(tol, rtol * np.abs(fine).sum(axis=0))
        total = err.sum(axis=0)

        if np.all(total <= allowed):
            break

        split = np.any(err * len(a) > allowed, axis=1)

        if not split.any():
            break

        if len(a) + split.sum() > max_panels:
            raise ConvergenceError("Adaptive quadrature needs more than %i panels "
                                   "(error %.3g > %.3g)." % (max_panels, total.max(),
                                                              allowed.max()))

        mid = (a[split] + b[split]) / 2
        new_side = np.concatenate([side[split], side[split]])
        new_a = np.concatenate([a[split], mid])
        new_b = np.concatenate([mid, b[split]])
        new_whole = np.concatenate([left[split], right[split]])
        new_left, new_right = panels.children(new_side, new_a, new_b)

        keep = ~split
        side = np.concatenate([side[keep], new_side])
        a = np.concatenate([a[keep], new_a])
        b = np.concatenate([b[keep], new_b])
        whole = np.concatenate([whole[keep], new_whole])
        left = np.concatenate([left[keep], new_left])
        right = np.concatenate([right[keep], new_right])
        rounds += 1

    log.debug("Unit integral converged with %i panels after %i refinements.",
              len(a), rounds)
    return UnitIntegral(fine.sum(axis=0), err.sum(axis=0), len(a))


def integrate_unit_scalar(integrand, tol=1e-10, **kw):
    """Scalar convenience wrapper around :func:`integrate_unit`."""
    result = integrate_unit(integrand, tol, **kw)
    return float(result.value[0])
