#
#  test_hermite.py
#
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gaussriesz.hermite import (ConvergenceError, DimensionMismatch, HermiteExpansion,
                                MeasureTag, MultiIndex, ResourceError, box_rule, centered_rule,
                                expansion_eval, gaussian_rule, hermite_eval, hermite_norm_sq,
                                integrate_unit, integrate_unit_scalar, multi_indices, project,
                                gaussian_tail_radius, random_expansion)


def index(max_order, d):
    return st.lists(st.integers(0, max_order), min_size=d, max_size=d).filter(
        lambda e: sum(e) <= max_order).map(tuple)


def test_hermite_eval_values():
    assert hermite_eval((0,), (0.7,)) == 1.0
    assert hermite_eval((1,), (0.5,)) == pytest.approx(1.0)
    assert hermite_eval((2, 1), (1.0, 1.0)) == pytest.approx(4.0)


def test_hermite_eval_vectorized():
    pts = np.array([[0.0], [0.5], [1.0]])
    assert np.allclose(hermite_eval((2,), pts), 4 * pts[:, 0] ** 2 - 2)


def test_hermite_eval_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        hermite_eval((1, 1), (0.5,))


@given(st.integers(1, 12), st.floats(-3, 3))
def test_three_term_recurrence(n, x):
    lhs = hermite_eval((n + 1,), (x,))
    rhs = 2 * x * hermite_eval((n,), (x,)) - 2 * n * hermite_eval((n - 1,), (x,))
    assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-9)


def test_hermite_norm_sq():
    assert hermite_norm_sq((0, 0)) == 1
    assert hermite_norm_sq((1,)) == 2
    assert hermite_norm_sq((2,)) == 8
    assert hermite_norm_sq((2, 1)) == 16


def test_multi_index():
    nu = MultiIndex((2, 0, 1))
    assert nu.order() == 3
    assert MultiIndex.zero(3).is_zero()
    assert nu == MultiIndex([2, 0, 1])

    with pytest.raises(ValueError):
        MultiIndex((1, -1))


def test_multi_indices_graded():
    indices = list(multi_indices(2, 3))
    assert len(indices) == 10
    assert [nu.order() for nu in indices] == sorted(nu.order() for nu in indices)
    assert len(set(indices)) == len(indices)


def test_gaussian_rule_single_node():
    rule = gaussian_rule(1, 1)
    assert rule.nodes.shape == (1, 1)
    assert rule.nodes[0, 0] == 0.0
    assert rule.weights[0] == pytest.approx(1.0, abs=1e-14)
    assert rule.measure is MeasureTag.GAUSSIAN


def test_gaussian_rule_probability():
    rule = gaussian_rule(5, 2)
    assert rule.integrate(np.ones(len(rule))) == pytest.approx(1.0, abs=1e-12)


def test_gaussian_rule_orthogonal_pair():
    rule = gaussian_rule(5, 1)
    values = hermite_eval((1,), rule.nodes) * hermite_eval((2,), rule.nodes)
    assert abs(rule.integrate(values)) < 1e-12


@pytest.mark.parametrize('n', [1, 3, 6, 10])
def test_gaussian_rule_moments(n):
    rule = gaussian_rule(n, 1)
    x = rule.nodes[:, 0]
    scale = rule.integrate(np.abs(x) ** (2 * n - 1))
    assert abs(rule.integrate(x ** (2 * n - 1))) <= 1e-12 * max(scale, 1.0)

    for k in range(n):
        # E[x^2k] under N(0, 1/2) is (2k-1)!! / 2^k
        expected = np.prod(np.arange(1, 2 * k, 2)) / 2 ** k
        assert rule.integrate(x ** (2 * k)) == pytest.approx(expected, rel=1e-10)


def test_gaussian_rule_budget():
    with pytest.raises(ResourceError):
        gaussian_rule(10, 3, budget=100)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 2).flatmap(lambda d: st.tuples(index(6, d), index(6, d))))
def test_orthogonality(pair):
    nu, mu = pair
    rule = gaussian_rule(8, len(nu))
    inner = rule.integrate(hermite_eval(nu, rule.nodes) * hermite_eval(mu, rule.nodes))
    scaled = inner / np.sqrt(hermite_norm_sq(nu) * hermite_norm_sq(mu))
    assert scaled == pytest.approx(1.0 if nu == mu else 0.0, abs=1e-10)


def test_project_examples():
    rule = gaussian_rule(8, 1)

    def h2(x):
        return hermite_eval((2,), x)

    assert project(h2, (2,), rule) == pytest.approx(1.0, abs=1e-12)
    assert abs(project(h2, (1,), rule)) < 1e-12
    assert project(lambda x: x[:, 0], (1,), rule) == pytest.approx(0.5, abs=1e-12)


def test_project_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        project(lambda x: x[:, 0], (1, 0), gaussian_rule(4, 1))


def test_expansion_eval_examples():
    assert expansion_eval(HermiteExpansion(1), (0.3,)) == 0
    assert expansion_eval(HermiteExpansion(1, {(0,): 3.0}), (2.0,)) == pytest.approx(3.0)
    e = HermiteExpansion(1, {(1,): 1.0, (2,): 1.0})
    assert expansion_eval(e, (1.0,)) == pytest.approx(4.0)

    with pytest.raises(DimensionMismatch):
        expansion_eval(e, (1.0, 2.0))


def test_expansion_drops_zero_coefficients():
    e = HermiteExpansion(2, {(1, 0): 0.0, (0, 1): 2.0})
    assert len(e) == 1
    assert e[(1, 0)] == 0.0
    assert (e + e * -1.0).coefficients == {}


@pytest.mark.parametrize('d', [1, 2])
def test_reconstruction(d):
    rng = np.random.default_rng(7)
    e = random_expansion(rng, d, 6)
    rule = gaussian_rule(8, d)
    back = HermiteExpansion.from_function(e.evaluate, d, 6, rule)
    pts = rng.uniform(-2, 2, (100, d))
    exact = e.evaluate(pts)
    assert np.max(np.abs(back.evaluate(pts) - exact)) <= 1e-9 * np.max(np.abs(exact))


def test_box_rule_polynomial():
    rule = box_rule(1.0, 1, panels=4, order=4)
    assert rule.integrate(rule.nodes[:, 0] ** 2) == pytest.approx(2 / 3, rel=1e-13)
    assert rule.measure is MeasureTag.LEBESGUE


def test_box_rule_gaussian_weights():
    rule = box_rule(8.0, 1)
    assert rule.gaussian_weights().sum() == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize('d', [1, 2, 3])
def test_gaussian_tail_radius(d):
    radius = gaussian_tail_radius(d, 1e-12)
    rule = box_rule(radius + 1.0, d, panels=12, order=8)
    outside = np.linalg.norm(rule.nodes, axis=1) > radius
    assert rule.gaussian_weights()[outside].sum() < 1e-10
    assert gaussian_tail_radius(1, 1e-12) == pytest.approx(np.sqrt(25.42), rel=0.01)
    assert gaussian_tail_radius(d, 1e-6) < radius

    with pytest.raises(ValueError):
        gaussian_tail_radius(d, 0.0)


def test_restrict():
    rule = box_rule(2.0, 2, panels=4, order=4)
    inner = rule.restrict(np.linalg.norm(rule.nodes, axis=1) <= 2.0)
    assert 0 < len(inner) < len(rule)
    assert inner.measure is rule.measure and inner.radius == rule.radius
    assert np.all(np.linalg.norm(inner.nodes, axis=1) <= 2.0)
    assert inner.weights.sum() == pytest.approx(4 * np.pi, rel=0.1)


@pytest.mark.parametrize('d, volume', [(1, 4.0), (2, 4 * np.pi), (3, 32 * np.pi / 3)])
def test_centered_rule_volume(d, volume):
    center = np.linspace(0.5, 1.0, d)
    rule = centered_rule(center, 2.0, breaks=[0.7])
    assert rule.weights.sum() == pytest.approx(volume, rel=1e-12)
    assert np.linalg.norm(rule.nodes - center, axis=1).min() > 0


def test_integrate_unit_endpoint_singularities():
    value = integrate_unit_scalar(lambda n: 1 / np.sqrt(n.u) + 1 / np.sqrt(n.v))
    assert value == pytest.approx(4.0, rel=1e-10)


def test_integrate_unit_batched():
    result = integrate_unit(lambda n: np.stack([n.u, n.t], axis=1), 1e-12)
    # t = -log(1 - u)/2 integrates to 1/2
    assert np.allclose(result.value, [0.5, 0.5], rtol=1e-10)
    assert result.error.shape == (2,)


def test_integrate_unit_budget():
    with pytest.raises(ConvergenceError):
        integrate_unit(lambda n: 1 / n.u, 1e-12, max_panels=100)
