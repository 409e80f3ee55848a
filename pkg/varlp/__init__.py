"""Variable-exponent Lebesgue spaces over the Gaussian measure."""

from .exponents import (PRESETS, ExponentClass, ExponentField, make_exponent,
                        parse_exponent)
from .norms import (ConjugateError, DivergenceError, conjugate, holder_check,
                    luxemburg_norm, modular)
from .regularity import lh0_constant, lhinf_constant, pinfty_gamma_check
