#!/usr/bin/env python3
#
#  expansion.py
#
"""Finite Hermite expansions and projections against γ_d."""

import logging
from dataclasses import dataclass, field
from typing import Dict

import numpy as np

from .polynomials import (DimensionMismatch, MultiIndex, as_multi_index, as_points,
                          hermite_eval, hermite_norm_sq, hermite_table, multi_indices,
                          table_eval)
from .quadrature import MeasureTag


log = logging.getLogger(__name__)


@dataclass
class HermiteExpansion:
    """Polynomial Σ c_ν H_ν; zero coefficients are never stored."""

    dimension: int
    coefficients: Dict[MultiIndex, float] = field(default_factory=dict)

    def __post_init__(self):
        coeffs = {}

        for nu, c in self.coefficients.items():
            nu = as_multi_index(nu)

            if len(nu) != self.dimension:
                raise DimensionMismatch("Multi-index %s in a %i-dimensional expansion."
                                        % (nu, self.dimension))

            if c != 0:
                coeffs[nu] = float(c)

        self.coefficients = coeffs

    @classmethod
    def basis(cls, nu):
        nu = as_multi_index(nu)
        return cls(len(nu), {nu: 1.0})

    @classmethod
    def from_function(cls, f, d, max_order, rule):
        """Project ``f`` onto every H_ν with |ν| ≤ max_order."""
        values = rule.evaluate(f)
        weights = rule.gaussian_weights()
        table = hermite_table(rule.nodes, max_order)
        coeffs = {}

        for nu in multi_indices(d, max_order):
            coeffs[nu] = np.dot(weights, values * table_eval(table, nu)) / hermite_norm_sq(nu)

        return cls(d, coeffs)

    def __len__(self):
        return len(self.coefficients)

    def __getitem__(self, nu):
        return self.coefficients.get(as_multi_index(nu), 0.0)

    def __iter__(self):
        return iter(self.coefficients.items())

    def __add__(self, other):
        if other.dimension != self.dimension:
            raise DimensionMismatch("Cannot add expansions of dimension %i and %i."
                                    % (self.dimension, other.dimension))

        coeffs = dict(self.coefficients)

        for nu, c in other:
            coeffs[nu] = coeffs.get(nu, 0.0) + c

        return HermiteExpansion(self.dimension, coeffs)

    def __mul__(self, scalar):
        return HermiteExpansion(self.dimension,
                                {nu: scalar * c for nu, c in self.coefficients.items()})

    __rmul__ = __mul__

    def order(self):
        return max((nu.order() for nu in self.coefficients), default=0)

    def evaluate(self, points):
        """Evaluate at an (n, d) array of points."""
        pts = as_points(points, self.dimension)

        if not self.coefficients:
            return np.zeros(len(pts))

        table = hermite_table(pts, max(max(nu) for nu in self.coefficients))
        result = np.zeros(len(pts))

        for nu, c in self.coefficients.items():
            result += c * table_eval(table, nu)

        return result

    __call__ = evaluate


def project(f, nu, rule):
    """Return ⟨f, H_ν⟩_γ / ‖H_ν‖²_γ computed with ``rule``."""
    nu = as_multi_index(nu)

    if len(nu) != rule.dim:
        raise DimensionMismatch("Multi-index %s against a %i-dimensional rule." % (nu, rule.dim))

    if rule.measure is not MeasureTag.GAUSSIAN:
        log.debug("Projecting with a %s rule; Gaussian density folded into weights.",
                  rule.measure.value)

    values = rule.evaluate(f) * hermite_eval(nu, rule.nodes)
    return float(np.dot(rule.gaussian_weights(), values)) / hermite_norm_sq(nu)


def expansion_eval(e, x):
    """Evaluate ``e`` at a single point."""
    pts = as_points(x)

    if pts.shape[1] != e.dimension:
        raise DimensionMismatch("Point of dimension %i for a %i-dimensional expansion."
                                % (pts.shape[1], e.dimension))

    return float(e.evaluate(pts)[0])


def random_expansion(rng, d, max_order, scale=1.0):
    """Expansion with normal random coefficients on all |ν| ≤ max_order.

    Coefficients are damped by ‖H_ν‖ so every mode carries a comparable
    share of the L²(γ_d) norm.

    """
    coeffs = {nu: scale * rng.standard_normal() / np.sqrt(hermite_norm_sq(nu))
              for nu in multi_indices(d, max_order)}
    return HermiteExpansion(d, coeffs)
