#!/usr/bin/env python3
#
#  spectral.py
#
"""Spectral definition of the Gaussian Riesz potential.

I_β acts on H_ν by the multiplier |ν|^(-β/2) and annihilates H_0.

"""

from dataclasses import dataclass

from ..hermite.expansion import HermiteExpansion


@dataclass(frozen=True)
class RieszOrder:
    beta: float

    def __post_init__(self):
        beta = float(self.beta)

        if not beta > 0:
            raise ValueError("Riesz order must be positive, got %r." % self.beta)

        object.__setattr__(self, 'beta', beta)

    def multiplier(self, order):
        return 0.0 if order == 0 else float(order) ** (-self.beta / 2)

    def require_theorem_range(self):
        if self.beta < 1:
            raise ValueError("The boundedness experiment needs beta >= 1, got %g." % self.beta)


def as_order(beta):
    return beta if isinstance(beta, RieszOrder) else RieszOrder(beta)


def riesz_spectral(e, beta):
    """Apply I_β to a Hermite expansion."""
    beta = as_order(beta)
    return HermiteExpansion(e.dimension,
                            {nu: c * beta.multiplier(nu.order()) for nu, c in e})


def riesz_apply_expansion(e, beta, points):
    """Values of I_β e at an (n, d) array of points."""
    return riesz_spectral(e, beta).evaluate(points)
