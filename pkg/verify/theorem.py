#!/usr/bin/env python3
#
#  theorem.py
#
"""Empirical boundedness of I_β on L^p(·)(γ_d) by sampling ‖I_β f‖ / ‖f‖.

Hermite expansions are mapped spectrally and normed on a Gauss-Hermite rule.
Bumps and ball indicators go through the kernel route: one operator table
is built on a Lebesgue box rule and reused for every function.

"""

import logging
import time
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Callable, Optional

import numpy as np
from scipy.stats import chi2

from ..geometry.admissible import uniform_ball
from ..hermite.expansion import HermiteExpansion, random_expansion
from ..hermite.quadrature import box_rule, gaussian_rule, gaussian_tail_radius
from ..riesz.kernel import RieszOperatorTable
from ..riesz.spectral import RieszOrder, riesz_apply_expansion
from ..varlp.exponents import ExponentClass
from ..varlp.norms import DivergenceError, luxemburg_from_values
from .config import ConfigError
from .parallel import parallel_map
from .report import RatioReport, RatioRow


log = logging.getLogger(__name__)

# radial template of the operator table rows
TABLE_TEMPLATE = dict(order=8, levels=12, panel_width=1.0)


@dataclass
class SampledFunction:
    function_id: str
    family: str
    func: Callable[[np.ndarray], np.ndarray]
    expansion: Optional[HermiteExpansion] = None


def _bump(center, width):
    return lambda y: np.exp(-np.linalg.norm(y - center, axis=1) ** 2 / width ** 2)


def _ball(center, radius):
    return lambda y: (np.linalg.norm(y - center, axis=1) < radius).astype(float)


def draw_test_functions(rng, config):
    d = config.dim
    families = config.theorem.families
    counters = dict.fromkeys(families, 0)
    functions = []

    for i in range(config.samples):
        family = families[i % len(families)]
        function_id = "%s-%i" % (family, counters[family])
        counters[family] += 1

        if family == 'hermite':
            e = random_expansion(rng, d, config.theorem.max_degree)
            functions.append(SampledFunction(function_id, family, e.evaluate, e))
        elif family == 'bump':
            center = uniform_ball(rng, 1, d, 3.0)[0]
            width = float(np.exp(rng.uniform(np.log(0.3), np.log(2.0))))
            functions.append(SampledFunction(function_id, family, _bump(center, width)))
        else:
            center = uniform_ball(rng, 1, d, 3.0)[0]
            functions.append(SampledFunction(function_id, family,
                                           _ball(center, float(rng.uniform(0.3, 2.0)))))

    return functions


def norm_pair(f_values, if_values, p, rule, tol):
    """(‖f‖, ‖I_β f‖) in L^p(·)(γ_d) from node values."""
    weights = rule.gaussian_weights()
    exponents = p(rule.nodes)
    return (luxemburg_from_values(f_values, exponents, weights, p.p_minus, tol),
            luxemburg_from_values(if_values, exponents, weights, p.p_minus, tol))


def expansion_ratio(e, beta, p, rule, tol=1e-9):
    """‖I_β e‖ / ‖e‖ for a Hermite expansion, 0 when e vanishes."""
    norm_f, norm_if = norm_pair(e.evaluate(rule.nodes),
                                riesz_apply_expansion(e, beta, rule.nodes), p, rule, tol)
    return norm_if / norm_f if norm_f > 0 else 0.0


def check_theorem_range(config):
    p = config.exponent_field()

    if not {ExponentClass.PINFTY_GAMMA, ExponentClass.LH0} <= p.tags:
        raise ConfigError("Exponent %s is not tagged P-infinity-gamma and LH0." % p.name)

    if p.p_minus <= 1:
        raise ConfigError("Exponent %s needs p_minus > 1." % p.name)

    try:
        RieszOrder(config.beta).require_theorem_range()
    except ValueError as exc:
        raise ConfigError(str(exc))

    return p


def theorem_experiment(config):
    """Run the norm-ratio experiment described by ``config``."""
    started = time.perf_counter()
    p = check_theorem_range(config)
    d, beta = config.dim, config.beta
    budget, tols = config.budget, config.tolerances
    functions = draw_test_functions(np.random.default_rng(config.seed), config)

    gauss = gaussian_rule(budget.points_per_axis, d, budget.nodes)
    radius = gaussian_tail_radius(d, tols.tail)
    box = box_rule(radius, d, panels=budget.operator_panels, order=budget.operator_order,
                   budget=budget.nodes)
    box = box.restrict(np.linalg.norm(box.nodes, axis=1) <= radius)
    table = None

    if any(fn.expansion is None for fn in functions):
        log.info("Building operator table on %i points (d=%i, beta=%g).", len(box), d, beta)
        table = RieszOperatorTable.build(beta, box.nodes, tol=tols.kernel,
                                         map_func=parallel_map, tail_tol=tols.tail,
                                         **TABLE_TEMPLATE)
        log.debug("Operator table has %i distinct rows.", table.row_count)

    def evaluate(fn):
        if fn.expansion is not None:
            rule = gauss
            f_values = fn.expansion.evaluate(rule.nodes)
            if_values = riesz_apply_expansion(fn.expansion, beta, rule.nodes)
        else:
            rule = box
            f_values = rule.evaluate(fn.func)
            if_values = table.apply(fn.func)

        try:
            norm_f, norm_if = norm_pair(f_values, if_values, p, rule, tols.norm)
        except DivergenceError as exc:
            log.warning("Norm of %s diverged: %s", fn.function_id, exc)
            return RatioRow(fn.function_id, float('nan'), float('nan'), float('nan'), True)

        ratio = norm_if / norm_f if norm_f > 0 else 0.0
        return RatioRow(fn.function_id, norm_f, norm_if, ratio)

    rows = parallel_map(evaluate, functions)
    report = RatioReport.summarize(
        rows, config.as_dict(), exponent=p.name, beta=beta, dim=d, norm_radius=radius,
        truncation_bound=float(chi2.sf(2 * radius ** 2, d)),
        runtime=time.perf_counter() - started,
        timestamp=datetime.now(timezone.utc).isoformat())
    log.info("Theorem experiment: sup ratio %.6g over %i functions (stability %.3g).",
             report.summary['sup_ratio'], len(rows), report.summary['stability_factor'])
    return report
