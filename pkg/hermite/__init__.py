"""Hermite polynomials, expansions and quadrature against the Gaussian measure."""

from .adaptive import ConvergenceError, UnitNodes, integrate_unit, integrate_unit_scalar
from .expansion import HermiteExpansion, expansion_eval, project, random_expansion
from .polynomials import (DimensionMismatch, MultiIndex, hermite_eval, hermite_norm_sq,
                          multi_indices)
from .quadrature import (MeasureTag, QuadratureRule, ResourceError, box_rule,
                         centered_rule, gaussian_rule, gaussian_tail_radius)
