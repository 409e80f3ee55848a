"""The Gaussian Riesz potential I_β, spectrally and through its kernel."""

from .kernel import (RieszOperatorTable, riesz_apply_kernel, riesz_kernel_eval,
                     riesz_kernel_pairs, riesz_kernel_values, riesz_split_apply,
                     signed_permutation, singular_rule)
from .spectral import RieszOrder, riesz_apply_expansion, riesz_spectral
