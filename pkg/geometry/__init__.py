"""Admissible balls, the covering family and the discrete maximal function."""

from .admissible import (AdmissibleBall, CoveringFamily, admissibility_radius,
                         admissible_ball, build_covering, in_local_region, local_mask)
from .maximal import (EmptyBallsError, GridFunction, dyadic_radii, local_part_domination,
                      maximal_function)
