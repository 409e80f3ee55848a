"""The Ornstein-Uhlenbeck semigroup and its Mehler kernel."""

from .mehler import (TailToleranceError, apply_Tt, apply_Tt_hermite, mehler_tail_radius,
                     omega, semigroup_rule)
