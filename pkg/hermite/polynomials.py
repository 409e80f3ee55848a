#!/usr/bin/env python3
#
#  polynomials.py
#
"""Multi-index Hermite polynomials (physicists' convention).

The polynomials are orthogonal with respect to the probability measure
``dγ_d = π^(-d/2) exp(-|x|²) dx``.

"""

import logging
from dataclasses import dataclass
from itertools import product
from math import factorial
from typing import Iterator, Tuple

import numpy as np
from numpy.polynomial.hermite import hermvander
from scipy.special import eval_hermite


log = logging.getLogger(__name__)


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class MultiIndex:
    entries: Tuple[int, ...]

    def __post_init__(self):
        entries = tuple(int(n) for n in self.entries)

        if not entries:
            raise ValueError("A multi-index needs at least one entry.")

        if any(n < 0 for n in entries):
            raise ValueError("Multi-index entries must be non-negative: %r" % (entries,))

        object.__setattr__(self, 'entries', entries)

    @classmethod
    def zero(cls, d):
        return cls((0,) * d)

    def order(self):
        return sum(self.entries)

    def is_zero(self):
        return self.order() == 0

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, index):
        return self.entries[index]

    def __str__(self):
        return "(%s)" % ",".join(str(n) for n in self.entries)


def as_multi_index(nu):
    return nu if isinstance(nu, MultiIndex) else MultiIndex(tuple(nu))


def as_points(x, d=None):
    """Return ``x`` as a float array of shape ``(n, d)``.

    A flat sequence is read as a single point. If ``d`` is given, the point
    dimension must match it.

    """
    pts = np.asarray(x, dtype=float)

    if pts.ndim == 0:
        pts = pts.reshape(1, 1)
    elif pts.ndim == 1:
        pts = pts.reshape(1, -1)

    if d is not None and pts.shape[1] != d:
        raise DimensionMismatch("Expected points of dimension %i, got %i." % (d, pts.shape[1]))

    return pts


def multi_indices(d, max_order) -> Iterator[MultiIndex]:
    """Yield every multi-index of length d with order ≤ max_order, graded."""
    for order in range(max_order + 1):
        for entries in product(range(order + 1), repeat=d):
            if sum(entries) == order:
                yield MultiIndex(entries)


def hermite_eval(nu, x):
    """Evaluate H_ν at one point (returns a float) or at an (n, d) array."""
    nu = as_multi_index(nu)
    single = np.ndim(x) <= 1
    pts = as_points(x)

    if pts.shape[1] != len(nu):
        raise DimensionMismatch("Multi-index %s does not match point dimension %i."
                                % (nu, pts.shape[1]))

    values = np.ones(pts.shape[0])

    for i, n in enumerate(nu):
        if n:
            values *= eval_hermite(n, pts[:, i])

    return float(values[0]) if single else values


def hermite_norm_sq(nu):
    """Return ∫ H_ν² dγ_d = ∏ 2^ν_i ν_i!."""
    nu = as_multi_index(nu)
    result = 1

    for n in nu:
        result *= 2 ** n * factorial(n)

    return float(result)


def hermite_table(points, max_degree):
    """Return per-axis tables of H_0..H_max_degree, shape (d, n, max_degree + 1)."""
    pts = as_points(points)
    return np.stack([hermvander(pts[:, i], max_degree) for i in range(pts.shape[1])])


def table_eval(table, nu):
    """Evaluate H_ν on the points a :func:`hermite_table` was built for."""
    values = np.ones(table.shape[1])

    for i, n in enumerate(nu):
        if n:
            values = values * table[i, :, n]

    return values
