#
#  test_semigroup.py
#
import numpy as np
import pytest
from hypothesis import given, strategies as st

from gaussriesz.hermite import HermiteExpansion, box_rule, hermite_eval
from gaussriesz.semigroup import (TailToleranceError, apply_Tt, apply_Tt_hermite,
                                  mehler_tail_radius, omega, semigroup_rule)

coordinate = st.floats(-3, 3)


def ones(y):
    return np.ones(len(y))


def test_omega_long_time_limit():
    y = np.array([0.4, -1.1])
    assert omega(50.0, [2.0, 1.0], y) == pytest.approx(np.exp(-y @ y), abs=1e-12)


@pytest.mark.parametrize('d', [1, 2, 3])
def test_omega_at_origin(d):
    zero = np.zeros(d)
    assert omega(np.log(2), zero, zero) == pytest.approx(0.75 ** (-d / 2), rel=1e-14)


@given(st.floats(0.05, 5.0), coordinate, coordinate)
def test_omega_reflection_symmetry(t, x, y):
    assert omega(t, [x], [y]) == pytest.approx(omega(t, [-x], [-y]), rel=1e-14)


@given(st.floats(0.1, 5.0), coordinate, coordinate, coordinate, coordinate)
def test_omega_positive(t, x1, x2, y1, y2):
    assert omega(t, [x1, x2], [y1, y2]) > 0


def test_omega_rejects_nonpositive_time():
    with pytest.raises(ValueError):
        omega(0.0, [0.0], [0.0])


def test_apply_Tt_conserves_constants():
    assert apply_Tt(ones, 0.3, [1.5]) == pytest.approx(1.0, abs=1e-8)


def test_apply_Tt_first_hermite():
    value = apply_Tt(lambda y: hermite_eval((1,), y), 0.5, [1.0])
    assert value == pytest.approx(2 * np.exp(-0.5), rel=1e-8)


def test_apply_Tt_long_time_kills_nonconstant_modes():
    assert abs(apply_Tt(lambda y: hermite_eval((2,), y), 50.0, [0.7])) < 1e-8


@pytest.mark.parametrize('t', [0.1, 0.5, 1.0])
@pytest.mark.parametrize('nu', [(1, 0), (0, 2), (2, 1), (1, 3), (4, 0)])
def test_eigenrelation(nu, t):
    x = np.array([1.2, -0.8])
    value = apply_Tt(lambda y: hermite_eval(nu, y), t, x)
    exact = np.exp(-sum(nu) * t) * hermite_eval(nu, x)
    assert abs(value - exact) <= 1e-7 * max(1.0, abs(exact))


def test_semigroup_law():
    nu = (2, 1)
    x = np.array([0.5, 1.0])
    s, t = 0.3, 0.4
    inner = apply_Tt_hermite(HermiteExpansion.basis(nu), t)
    value = apply_Tt(inner.evaluate, s, x)
    exact = np.exp(-3 * (s + t)) * hermite_eval(nu, x)
    assert value == pytest.approx(exact, rel=1e-7)


def test_apply_Tt_hermite_scaling():
    e = HermiteExpansion(1, {(0,): 2.0, (3,): 1.0})
    image = apply_Tt_hermite(e, 0.25)
    assert image[(0,)] == 2.0
    assert image[(3,)] == pytest.approx(np.exp(-0.75))


def test_rule_too_small():
    with pytest.raises(TailToleranceError):
        apply_Tt(ones, 1.0, [0.0], rule=box_rule(0.5, 1))


def test_semigroup_rule_holds_tail():
    t, x = 0.2, np.array([3.0])
    rule = semigroup_rule(t, x)
    assert rule.radius == pytest.approx(mehler_tail_radius(t, 1))
    assert np.allclose(rule.center, np.exp(-t) * x)
