#
#  test_bounds.py
#
import numpy as np
import pytest
from hypothesis import given, strategies as st

from gaussriesz.bounds import (BoundReport, DegenerateGeometryError, PreconditionError,
                               alpha_infty, aux_kernels, default_eps, exp_decay_estimate_check,
                               expineq_constant, expineq_grid_max, exponent_swap_check,
                               global_bound_check, kernel_geometry, lemma_gamma,
                               lemma_gamma_closed_form, local_bound_check, local_region_check,
                               log_power_closed_form, log_power_integrals,
                               master_decomposition_check, phib0_batch, phib0_check,
                               pq_kernel_check, sample_pairs, t0_asymptotics_check,
                               t0_minimizer_batch, t0_minimizer_check, term_I, term_II,
                               term_III, u_of_t)
from gaussriesz.bounds.geometry import REGIONS, region_mask
from gaussriesz.bounds.global_part import (GLOBAL_REGIONS, eps_supremum, q_moment_bound,
                                           sphere_area)
from gaussriesz.bounds.lemmas import (exp_decay_estimate_closed_form, exp_decay_estimate_ratios,
                                      log_power_refinement)
from gaussriesz.bounds.terms import decomposition_constant, g2_holder_constant
from gaussriesz.varlp.exponents import (constant_exponent, decay_exponent, log_decay_exponent,
                                        oscillating_exponent)

coordinate = st.floats(-4, 4).filter(lambda v: abs(v) > 1e-3)


# -- report ------------------------------------------------------------------

def test_report_from_sides():
    report = BoundReport.from_sides('demo', [1.0, 2.0, 0.0, 3.0], [1.0, 1.0, 0.0, 1.0],
                                    bound=2.5)
    assert report.samples == 4
    assert report.violations == 1
    assert report.worst_margin == pytest.approx(0.5)
    assert report.constant == 3.0
    assert report.half_constant == 2.0
    assert report.stability == pytest.approx(1.5)
    assert report.stable and not report.passed


def test_report_without_bound_counts_non_finite():
    report = BoundReport.from_sides('demo', [1.0, 1.0], [2.0, 0.0])
    assert report.violations == 1
    assert report.constant == 0.5
    assert report.as_dict()['stability'] == report.stability


def test_report_of_zeros_is_stable():
    report = BoundReport.from_ratios('zeros', np.zeros(6))
    assert report.stability == 1.0 and report.passed


# -- geometry ----------------------------------------------------------------

def test_kernel_geometry_worked_example():
    geo = kernel_geometry((1.0,), (2.0,))
    assert (geo.a, geo.b) == (5.0, 4.0)
    assert geo.t0 == pytest.approx(0.75)
    assert geo.u_t0 == pytest.approx(3.0)


def test_kernel_geometry_orthogonal_points():
    geo = kernel_geometry((1.0, 0.0), (0.0, 2.0))
    assert geo.b == 0
    assert geo.t0 == pytest.approx(1.0)
    assert geo.u_t0 == pytest.approx(4.0)


@given(coordinate, coordinate, coordinate, coordinate)
def test_u_t0_swap_sum(x1, x2, y1, y2):
    x, y = np.array([x1, x2]), np.array([y1, y2])
    total = kernel_geometry(x, y).u_t0 + kernel_geometry(y, x).u_t0
    root = np.linalg.norm(x - y) * np.linalg.norm(x + y)
    assert total == pytest.approx(root, rel=1e-9, abs=1e-12)


def test_kernel_geometry_degenerate():
    with pytest.raises(DegenerateGeometryError):
        kernel_geometry((0.0,), (0.0,))


def test_u_of_t_examples():
    assert u_of_t(1.0, (1.0,), (2.0,)) == pytest.approx(4.0)
    assert u_of_t(0.75, (1.0,), (2.0,)) == pytest.approx(3.0)

    for t in (0.0, 1.5):
        with pytest.raises(ValueError):
            u_of_t(t, (1.0,), (2.0,))


@given(st.floats(1e-3, 1.0), coordinate, coordinate, coordinate, coordinate)
def test_u_of_t_identity(t, x1, x2, y1, y2):
    x, y = np.array([x1, x2]), np.array([y1, y2])
    expected = np.linalg.norm(y - np.sqrt(1 - t) * x) ** 2 / t
    assert u_of_t(t, x, y) == pytest.approx(expected, rel=1e-8, abs=1e-8)


def test_t0_minimizer_worked_example():
    report = t0_minimizer_check((1.0,), (2.0,))
    assert report.passed
    assert report.metadata['grid_min'] == pytest.approx(3.0, abs=1e-3)
    assert report.metadata['grid_argmin'] == pytest.approx(0.75, rel=0.01)


def test_t0_minimizer_needs_nonnegative_b():
    with pytest.raises(PreconditionError):
        t0_minimizer_check((1.0,), (-2.0,))


def test_t0_minimizer_batch():
    assert t0_minimizer_batch(100, d=2, seed=3).passed


@pytest.mark.parametrize('region', REGIONS)
@pytest.mark.parametrize('d', [1, 2])
def test_sample_pairs_stay_in_region(region, d):
    xs, ys = sample_pairs(np.random.default_rng(0), 64, d, region)
    assert xs.shape == ys.shape == (64, d)
    assert region_mask(xs, ys, region).all()
    assert np.all(np.linalg.norm(xs, axis=1) <= 5)
    assert np.all(np.linalg.norm(xs - ys, axis=1) >= 1e-3)


def test_sample_pairs_unknown_region():
    with pytest.raises(ValueError):
        sample_pairs(np.random.default_rng(0), 4, 1, 'nowhere')


def test_phib0_worked_example():
    report = phib0_check((1.0,), (2.0,), t_samples=50)
    assert report.passed
    # at t = t0 the comparison holds with the whole 2^d slack
    assert report.constant <= 1.0


def test_phib0_needs_positive_b():
    with pytest.raises(PreconditionError):
        phib0_check((1.0, 0.0), (0.0, 2.0))


@pytest.mark.parametrize('d', [1, 2, 3])
def test_phib0_batch(d):
    assert phib0_batch(60, d, t_samples=40, seed=d).passed


@pytest.mark.parametrize('d', [1, 2, 3])
def test_t0_asymptotics(d):
    report = t0_asymptotics_check(2000, d, seed=1)
    assert report.passed
    assert 1 <= report.metadata['ratio_min'] <= report.metadata['ratio_max'] <= 4


# -- lemmas ------------------------------------------------------------------

def test_expineq_constant():
    assert expineq_constant(0, 1.0) == 1.0
    assert expineq_constant(2, 0.5) == pytest.approx(2 / np.e)

    for alpha, c in ((1.0, 0.0), (-1.0, 1.0)):
        with pytest.raises(ValueError):
            expineq_constant(alpha, c)


@pytest.mark.parametrize('alpha', [1, 2, 3])
@pytest.mark.parametrize('c', [0.25, 0.5, 1.0])
def test_expineq_grid(alpha, c):
    assert expineq_grid_max(alpha, c) == pytest.approx(expineq_constant(alpha, c), abs=1e-8)


def test_lemma_gamma_values():
    assert lemma_gamma(1.0) == pytest.approx(1.0, abs=1e-12)
    assert lemma_gamma(2.0) == pytest.approx(0.5, rel=1e-10)
    assert lemma_gamma(0.5) == pytest.approx(np.sqrt(2 * np.pi), abs=1e-6)

    for alpha in (1.5, 3.0, 4.0):
        assert lemma_gamma(alpha) == pytest.approx(lemma_gamma_closed_form(alpha), rel=1e-9)

    with pytest.raises(ValueError):
        lemma_gamma(0.0)


def test_log_power_integrals():
    first = [log_power_integrals(b)[0] for b in (1.0, 2.0, 4.0)]
    second = [log_power_integrals(b)[1] for b in (1.0, 2.0, 4.0)]
    assert first == sorted(first)
    # -log sqrt(1-u) < 1 on (0, 1/2], so the second part shrinks with beta
    assert second == sorted(second, reverse=True)

    for beta, value in zip((1.0, 2.0, 4.0), first):
        assert value == pytest.approx(log_power_closed_form(beta), rel=1e-8)

    assert log_power_refinement(2.0) <= 1e-8
    assert log_power_integrals(1e-3)[0] == pytest.approx(np.sqrt(2), rel=0.01)


def test_estimate_closed_form_in_two_dimensions():
    a = np.array([1.0, 3.0, 10.0])
    assert np.allclose(exp_decay_estimate_closed_form(a, 0.2, 2), 1 / (0.8 * a), rtol=1e-12)
    assert np.allclose(exp_decay_estimate_ratios(a, 0.2, 2), 1 / (0.8 * a), rtol=1e-8)


@pytest.mark.parametrize('d', [1, 2, 3])
def test_estimate_check(d):
    report = exp_decay_estimate_check(0.25, d, samples=60, seed=d)
    assert report.metadata['closed_form_error'] <= 1e-6
    assert report.stable
    assert np.isfinite(report.constant)

    with pytest.raises(ValueError):
        exp_decay_estimate_check(1.0, d)


# -- decomposition -------------------------------------------------------------

def test_terms_at_origin_and_worked_pair():
    assert term_I(2.0, (0.0,), (1.5,)) == 0.0
    values = [term(2.0, (1.0,), (1.5,)) for term in (term_I, term_II, term_III)]
    assert all(np.isfinite(v) and v > 0 for v in values)


def test_aux_kernels():
    k2, g2, k3 = aux_kernels(np.array([2.0]), np.array([2.2]), 2.0)
    assert k3 == pytest.approx(3.0)
    assert k2 > 0 and g2 > 0

    with pytest.raises(ValueError):
        aux_kernels(np.array([1.0]), np.array([1.0]), 2.0)


def test_decomposition_constants():
    assert decomposition_constant(2.0, 1) == pytest.approx(1 / np.sqrt(np.pi))
    assert g2_holder_constant(2.0, 1) == pytest.approx(
        lemma_gamma_closed_form(4.0) ** (1 / 3) * 4 ** (2 / 3))


@pytest.mark.parametrize('beta, d', [(1.0, 1), (2.0, 1), (3.0, 2)])
def test_master_decomposition(beta, d):
    report = master_decomposition_check(beta, d, samples=40, seed=2)
    assert report.passed
    assert report.metadata['plain_sum_constant'] < 2 * decomposition_constant(beta, d) + 1e-6


def test_local_region():
    assert local_region_check(300, 2, seed=4).passed


@pytest.mark.slow
def test_local_bounds():
    local, holder = local_bound_check(2.0, 1, samples=60, seed=5)
    assert local.passed and np.isfinite(local.constant)
    assert holder.passed


# -- global part -----------------------------------------------------------------

def test_eps_range():
    assert eps_supremum(2.0, 1, 2.0) == pytest.approx(0.5)
    assert default_eps(2.0, 1, 2.0) == pytest.approx(0.25)
    assert alpha_infty(2.0, 0.1) == pytest.approx(0.4)


def test_q_moment_bound():
    assert sphere_area(1) == pytest.approx(2.0)
    assert sphere_area(3) == pytest.approx(4 * np.pi)
    assert q_moment_bound(0.4, 1, 2.0) == pytest.approx(4750.0)


@pytest.mark.parametrize('region', GLOBAL_REGIONS)
def test_global_bound(region):
    report = global_bound_check(2.0, region, samples=20, seed=6)
    assert report.passed
    assert np.isfinite(report.constant) and report.constant > 0


@pytest.mark.slow
@pytest.mark.parametrize('d', [1, 2])
@pytest.mark.parametrize('beta', [1.0, 2.0])
@pytest.mark.parametrize('region', GLOBAL_REGIONS)
def test_global_bound_is_stable(region, beta, d):
    report = global_bound_check(beta, region, d=d, seed=11)
    assert report.samples == 200
    assert report.passed
    assert report.stability <= 1.5


def test_global_bound_preconditions():
    with pytest.raises(ValueError):
        global_bound_check(2.0, 'local')

    with pytest.raises(PreconditionError):
        global_bound_check(2.0, 'b_nonpos', eps=0.9)

    with pytest.raises(PreconditionError):
        global_bound_check(0.5, 'b_nonpos', d=2)


def test_pq_kernel_constant_exponent():
    report = pq_kernel_check(constant_exponent(2.0), 0.1, samples=10)
    assert report.passed
    assert report.metadata['alpha_infty'] == pytest.approx(0.4)
    assert report.metadata['equivalence_log_max'] == 0.0


def test_pq_kernel_decay_exponent():
    report = pq_kernel_check(decay_exponent(2.0, 1.0), 0.1, samples=10, seed=1)
    assert report.passed


def test_pq_kernel_preconditions():
    with pytest.raises(PreconditionError):
        pq_kernel_check(oscillating_exponent(), 0.1)

    with pytest.raises(PreconditionError):
        pq_kernel_check(constant_exponent(2.0), 0.6)


@pytest.mark.parametrize('d', [1, 2])
def test_exponent_swap(d):
    rho = log_decay_exponent(2.0)
    report = exponent_swap_check(rho, d / rho.p_minus + 1, d, samples=40, seed=d)
    assert report.passed
    assert np.isfinite(report.constant)

    with pytest.raises(PreconditionError):
        exponent_swap_check(rho, d / rho.p_minus, d)
