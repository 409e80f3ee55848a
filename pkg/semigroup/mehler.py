#!/usr/bin/env python3
#
#  mehler.py
#
"""Mehler kernel and the Ornstein-Uhlenbeck semigroup T_t = e^(tL).

With the normalization dγ_d = π^(-d/2) e^(-|x|²) dx,

    T_t f(x) = π^(-d/2) ∫ ω(t, x, y) f(y) dy,
    ω(t, x, y) = exp(-|y - e^(-t) x|² / (1 - e^(-2t))) / (1 - e^(-2t))^(d/2),

so π^(-d/2) ω(t, x, ·) is the normal density with mean e^(-t) x and
variance (1 - e^(-2t)) / 2 per axis.

"""

import logging

import numpy as np
from scipy.stats import chi

from ..hermite.expansion import HermiteExpansion
from ..hermite.polynomials import as_points
from ..hermite.quadrature import MeasureTag, box_rule


log = logging.getLogger(__name__)
DEFAULT_TAIL_TOL = 1e-12


class TailToleranceError(ValueError):
    pass


def _check_time(t):
    if not t > 0:
        raise ValueError("Semigroup time must be positive, got %r." % t)


def omega(t, x, y):
    """Mehler kernel ω(t, x, y); ``y`` may be one point or an (n, d) array."""
    _check_time(t)
    xp = as_points(x)[0]
    single = np.ndim(y) <= 1
    yp = as_points(y, len(xp))
    one_minus = -np.expm1(-2 * t)
    diff = yp - np.exp(-t) * xp
    values = np.exp(-np.einsum('ij,ij->i', diff, diff) / one_minus) / one_minus ** (len(xp) / 2)
    return float(values[0]) if single else values


def mehler_sigma(t):
    return np.sqrt(-np.expm1(-2 * t) / 2)


def mehler_tail_radius(t, d, tail_tol=DEFAULT_TAIL_TOL):
    """Radius around e^(-t) x outside which the kernel mass is below ``tail_tol``."""
    _check_time(t)
    return float(mehler_sigma(t) * chi.isf(tail_tol, d))


def semigroup_rule(t, x, tail_tol=DEFAULT_TAIL_TOL, order=8, panels=None):
    """Box rule centered at e^(-t) x that :func:`apply_Tt` accepts for (t, x)."""
    xp = as_points(x)[0]
    radius = mehler_tail_radius(t, len(xp), tail_tol)

    if panels is None:
        panels = int(np.ceil(2 * radius / mehler_sigma(t))) + 1

    return box_rule(radius, len(xp), panels=panels, order=order, center=np.exp(-t) * xp)


def apply_Tt(f, t, x, rule=None, tail_tol=DEFAULT_TAIL_TOL):
    """Evaluate T_t f(x) by y-quadrature on a Lebesgue box rule."""
    _check_time(t)
    xp = as_points(x)[0]

    if rule is None:
        rule = semigroup_rule(t, xp, tail_tol)
    else:
        if rule.measure is not MeasureTag.LEBESGUE or rule.radius is None:
            raise TailToleranceError("apply_Tt needs a Lebesgue box rule.")

        offset = np.max(np.abs(rule.center - np.exp(-t) * xp))
        needed = mehler_tail_radius(t, len(xp), tail_tol)

        if offset + needed > rule.radius * (1 + 1e-12):
            raise TailToleranceError(
                "Box of radius %g does not hold the kernel tail (needs %g) at t=%g."
                % (rule.radius, offset + needed, t))

    kernel = omega(t, xp, rule.nodes)
    return float(np.dot(rule.weights, kernel * rule.evaluate(f))) * np.pi ** (-len(xp) / 2)


def apply_Tt_hermite(e, t):
    """Spectral action of T_t: each H_ν is scaled by e^(-|ν|t)."""
    _check_time(t)
    return HermiteExpansion(e.dimension,
                            {nu: c * np.exp(-nu.order() * t) for nu, c in e})
