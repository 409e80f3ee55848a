"""Sampled verification of the kernel estimates behind the boundedness of I_β."""

from .geometry import (DegenerateGeometryError, KernelGeometry, PreconditionError,
                       kernel_geometry, phib0_batch, phib0_check, sample_pairs,
                       t0_asymptotics_check, t0_minimizer_batch, t0_minimizer_check, u_of_t)
from .global_part import (alpha_infty, default_eps, exponent_swap_check, global_bound_check,
                          pq_kernel_check)
from .lemmas import (exp_decay_estimate_check, expineq_constant, expineq_grid_max,
                     lemma_gamma, lemma_gamma_closed_form, log_power_closed_form,
                     log_power_integrals)
from .report import BoundReport
from .terms import (aux_kernels, g2_holder_constant, local_bound_check, local_region_check,
                    master_decomposition_check, term_I, term_II, term_III)
