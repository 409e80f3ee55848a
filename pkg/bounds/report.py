#!/usr/bin/env python3
#
#  report.py
#
"""Outcome of a sampled inequality check."""

from dataclasses import asdict, dataclass, field
from typing import Dict

import numpy as np


STABILITY_FACTOR = 1.5


@dataclass
class BoundReport:
    """Sampled check of lhs ≤ C·rhs.

    ``constant`` is the empirical sup of lhs/rhs, ``half_constant`` the sup
    over the first half of the samples. ``violations`` only counts samples
    beyond the declared tolerance of a declared bound.

    """

    name: str
    samples: int = 0
    violations: int = 0
    worst_margin: float = 0.0
    constant: float = 0.0
    half_constant: float = 0.0
    metadata: Dict[str, object] = field(default_factory=dict)

    @classmethod
    def from_sides(cls, name, lhs, rhs, bound=None, tol=0.0, rtol=0.0, **metadata):
        """Build a report from per-sample sides, in sample order.

        With ``bound`` given, a sample violates when
        lhs > bound·rhs + tol + rtol·bound·|rhs|. Without it, only non-finite
        ratios count as violations.

        """
        lhs = np.asarray(lhs, dtype=float)
        rhs = np.asarray(rhs, dtype=float)

        with np.errstate(divide='ignore', invalid='ignore'):
            ratios = np.where((lhs == 0) & (rhs == 0), 0.0, lhs / rhs)

        if bound is None:
            violations = int((~np.isfinite(ratios)).sum())
            margin = 0.0
        else:
            excess = lhs - bound * rhs
            allowed = tol + rtol * bound * np.abs(rhs)
            violations = int((excess > allowed).sum() + (~np.isfinite(excess)).sum())
            margin = float(np.nanmax(excess)) if len(excess) else 0.0

        return cls.from_ratios(name, ratios, violations=violations, worst_margin=margin,
                               **metadata)

    @classmethod
    def from_ratios(cls, name, ratios, violations=0, worst_margin=0.0, **metadata):
        ratios = np.asarray(ratios, dtype=float)
        finite = np.where(np.isfinite(ratios), ratios, np.nan)
        half = finite[:len(finite) // 2]
        constant = float(np.nanmax(finite)) if np.isfinite(finite).any() else 0.0
        half_constant = float(np.nanmax(half)) if np.isfinite(half).any() else 0.0
        return cls(name, len(ratios), int(violations), float(worst_margin), constant,
                   half_constant, dict(metadata))

    @property
    def stability(self):
        """Full-sample sup over half-sample sup (1 when both vanish)."""
        if self.constant == 0:
            return 1.0

        if self.half_constant == 0:
            return float('inf')

        return self.constant / self.half_constant

    @property
    def stable(self):
        return self.stability <= STABILITY_FACTOR

    @property
    def passed(self):
        return self.violations == 0

    def as_dict(self):
        data = asdict(self)
        data['stability'] = self.stability
        return data
