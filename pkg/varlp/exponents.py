#!/usr/bin/env python3
#
#  exponents.py
#
"""Variable exponent fields p(·) and the built-in presets."""

import enum
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, Optional

import numpy as np

from ..hermite.polynomials import as_points


log = logging.getLogger(__name__)


class ExponentClass(enum.Enum):
    LH0 = 'LH0'
    LHINF = 'LHinf'
    PINFTY_GAMMA = 'PinftyGamma'


@dataclass(frozen=True)
class ExponentField:
    """An exponent p: R^d → [1, ∞) with declared bounds and class tags.

    ``func`` maps an (n, d) array to n exponent values. Tags are what the
    preset claims; membership is checked by sampling in
    :mod:`gaussriesz.varlp.regularity`.

    """

    func: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    p_minus: float
    p_plus: float
    p_infty: Optional[float] = None
    tags: FrozenSet[ExponentClass] = frozenset()
    constants: Dict[str, float] = field(default_factory=dict)
    name: str = 'custom'

    def __post_init__(self):
        if not 1 <= self.p_minus <= self.p_plus < np.inf:
            raise ValueError("Exponent bounds must satisfy 1 <= p_minus <= p_plus < inf, "
                             "got %r, %r." % (self.p_minus, self.p_plus))

    def __call__(self, points):
        return np.asarray(self.func(as_points(points)), dtype=float)

    def in_class(self, cls):
        return cls in self.tags

    def sample_check(self, rng, n=1000, d=1, radius=10.0):
        """Check p_minus ≤ p(x) ≤ p_plus at n random points."""
        pts = rng.uniform(-radius, radius, (n, d))
        values = self(pts)
        slack = 1e-12 * self.p_plus
        return bool(np.all(values >= self.p_minus - slack) and
                    np.all(values <= self.p_plus + slack))


ALL_CLASSES = frozenset(ExponentClass)


def _norms(x):
    return np.linalg.norm(x, axis=1)


def constant_exponent(q=2.0):
    q = float(q)
    return ExponentField(lambda x: np.full(len(x), q), q, q, q, ALL_CLASSES,
                         {'C_gamma': 0.0}, 'constant:q=%g' % q)


def decay_exponent(p_inf=2.0, c=1.0):
    """p(x) = p_inf + c / (1 + |x|²)."""
    p_inf, c = float(p_inf), float(c)

    if c < 0:
        raise ValueError("The decay preset needs c >= 0.")

    return ExponentField(lambda x: p_inf + c / (1 + _norms(x) ** 2), p_inf, p_inf + c,
                         p_inf, ALL_CLASSES, {'C_gamma': c},
                         'decay:p_inf=%g,c=%g' % (p_inf, c))


def bump_exponent(p_inf=2.0, c=0.5, rho=2.0):
    """p(x) = p_inf + c sin²(π|x|/rho) inside |x| < rho, p_inf outside."""
    p_inf, c, rho = float(p_inf), float(c), float(rho)

    if c < 0 or rho <= 0:
        raise ValueError("The bump preset needs c >= 0 and rho > 0.")

    def func(x):
        r = _norms(x)
        return p_inf + np.where(r < rho, c * np.sin(np.pi * r / rho) ** 2, 0.0)

    return ExponentField(func, p_inf, p_inf + c, p_inf, ALL_CLASSES,
                         {'C_gamma': c * rho ** 2},
                         'bump:p_inf=%g,c=%g,rho=%g' % (p_inf, c, rho))


def oscillating_exponent(p_inf=2.0, c=0.5):
    """p(x) = p_inf + c sin²(|x|); log-Hölder but without a limit at infinity."""
    p_inf, c = float(p_inf), float(c)
    return ExponentField(lambda x: p_inf + c * np.sin(_norms(x)) ** 2, p_inf, p_inf + c,
                         None, frozenset({ExponentClass.LH0}), {},
                         'oscillating:p_inf=%g,c=%g' % (p_inf, c))


def log_decay_exponent(p_inf=2.0):
    """p(x) = p_inf + 1/log(e + |x|); decays too slowly for P^∞_γ."""
    p_inf = float(p_inf)
    return ExponentField(lambda x: p_inf + 1 / np.log(np.e + _norms(x)), p_inf, p_inf + 1,
                         p_inf, frozenset({ExponentClass.LH0, ExponentClass.LHINF}), {},
                         'log-decay:p_inf=%g' % p_inf)


def step_exponent(low=2.0, high=3.0):
    """p = low on {x_1 < 0} and high elsewhere; not log-Hölder at the jump."""
    low, high = float(low), float(high)
    return ExponentField(lambda x: np.where(x[:, 0] < 0, low, high), min(low, high),
                         max(low, high), None, frozenset(), {},
                         'step:low=%g,high=%g' % (low, high))


PRESETS = {
    'constant': constant_exponent,
    'decay': decay_exponent,
    'bump': bump_exponent,
    'oscillating': oscillating_exponent,
    'log-decay': log_decay_exponent,
    'step': step_exponent,
}


def make_exponent(preset, **params):
    """Build a preset by id; unknown ids and parameters raise ValueError."""
    try:
        factory = PRESETS[preset]
    except KeyError:
        raise ValueError("Unknown exponent preset '%s' (known: %s)."
                         % (preset, ", ".join(sorted(PRESETS))))

    try:
        return factory(**params)
    except TypeError as exc:
        raise ValueError("Bad parameters for exponent preset '%s': %s" % (preset, exc))


def parse_exponent(spec):
    """Parse ``id`` or ``id:key=value,key=value`` into an ExponentField."""
    preset, _, rest = spec.partition(':')
    params = {}

    for item in filter(None, rest.split(',')):
        key, sep, value = item.partition('=')

        if not sep:
            raise ValueError("Exponent parameter '%s' is not of the form key=value." % item)

        try:
            params[key.strip().replace('-', '_')] = float(value)
        except ValueError:
            raise ValueError("Exponent parameter '%s' is not a number." % item)

    return make_exponent(preset.strip(), **params)
