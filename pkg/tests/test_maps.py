from __future__ import annotations

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from offcenterlib.angles import circular_distance
from offcenterlib.errors import DomainError, SingularPointError
from offcenterlib.maps import (
    MapParams,
    blaschke_image,
    circle_map,
    h_cubic,
    incident_angle,
    incident_angle_derivative,
    incident_angle_series,
    iterate_multiplier_partial,
    lift,
    lift_derivatives,
    lift_iterate,
    lift_param_partials,
    schwarzian,
    schwarzian_closed_form,
    second_iterate_multiplier_partial,
    second_iterate_multiplier_partial_reduced,
    symmetric_point_multiplier_partial,
    truncated_lift,
)

SQRT2 = math.sqrt(2)


@pytest.mark.parametrize('omega', [0, 1, -1.5, math.pi])
def test_map_params(omega: float) -> None:
    p = MapParams(0.5, omega)
    assert p.r == 0.5
    assert type(p.omega) is float
    assert p.is_symmetric is (omega in (0, math.pi))


@pytest.mark.parametrize('r', [-0.1, 1, 1.5])
def test_map_params_invalid_radius(r: float) -> None:
    with pytest.raises(DomainError, match='The radius must satisfy 0 <= r < 1'):
        MapParams(r, 0)


@pytest.mark.parametrize('omega', [-math.pi, 3.5, -4])
def test_map_params_invalid_omega(omega: float) -> None:
    with pytest.raises(DomainError, match='The rotation angle must satisfy -pi < omega <= pi'):
        MapParams(0.5, omega)


def test_map_params_invalid_omega_type() -> None:
    with pytest.raises(TypeError, match='Invalid omega of type'):
        MapParams(0.5, 'pi')  # type: ignore[arg-type]


@pytest.mark.parametrize('r', [0, 0.3, 0.9])
def test_incident_angle(r: float, rng: np.random.Generator) -> None:
    x = rng.uniform(-math.pi, math.pi, 100)
    iota = incident_angle(r, x)
    assert_allclose(incident_angle(r, -x), -iota, atol=1e-15)
    assert_allclose(incident_angle(r, x + 2 * math.pi), iota, atol=1e-12)
    assert np.all(np.abs(iota) <= math.asin(r) + 1e-15)


def test_incident_angle_scalar() -> None:
    assert incident_angle(0.5, 0) == 0
    assert incident_angle(0.5, math.pi / 2) == pytest.approx(math.atan(0.5))
    assert isinstance(incident_angle(0.5, 1.0), float)


@pytest.mark.parametrize('r, order', [(0.3, 5), (0.5, 20), (0.8, 60)])
def test_incident_angle_series(r: float, order: int) -> None:
    x = np.linspace(-math.pi, math.pi, 101)
    bound = r ** (order + 1) / ((order + 1) * (1 - r))
    error = np.abs(incident_angle_series(r, x, order) - incident_angle(r, x))
    assert np.all(error <= bound + 1e-15)


def test_truncated_lift_arnold() -> None:
    p = MapParams(0.2, 0.5)
    x = np.linspace(-3, 3, 7)
    assert_allclose(truncated_lift(p, x, 1), x + 0.5 - 0.4 * np.sin(x), atol=1e-15)


def test_incident_angle_derivative() -> None:
    x = np.linspace(-3, 3, 13)
    step = 1e-6
    estimate = (incident_angle(0.6, x + step) - incident_angle(0.6, x - step)) / (2 * step)
    assert_allclose(incident_angle_derivative(0.6, x), estimate, atol=1e-8)
    assert_allclose(lift_derivatives(MapParams(0.6, 0), x).d1, 1 - 2 * incident_angle_derivative(0.6, x))


@pytest.mark.parametrize('omega', [0, 1.0, math.pi])
def test_lift(omega: float, rng: np.random.Generator) -> None:
    p = MapParams(0.7, omega)
    x = rng.uniform(-math.pi, math.pi, 100)
    assert lift(p, 0) == omega
    assert_allclose(lift(p, x + 2 * math.pi), lift(p, x) + 2 * math.pi, atol=1e-12)


@pytest.mark.parametrize('omega', [0, math.pi])
def test_lift_reflection_equivariance(omega: float, rng: np.random.Generator) -> None:
    p = MapParams(0.7, omega)
    x = rng.uniform(-math.pi, math.pi, 100)
    assert_allclose(circular_distance(circle_map(p, -x), -circle_map(p, x)), 0, atol=1e-12)


def test_lift_rigid_rotation() -> None:
    p = MapParams(0, 1.0)
    assert_allclose(lift(p, np.array([0.0, 1.0, 2.0])), [1.0, 2.0, 3.0])


def test_circle_map_range(rng: np.random.Generator) -> None:
    values = circle_map(MapParams(0.9, math.pi), rng.uniform(-math.pi, math.pi, 1000))
    assert np.all((values > -math.pi) & (values <= math.pi))


def test_lift_derivatives_rotation() -> None:
    bundle = lift_derivatives(MapParams(0, 0.5), 1.0)
    assert bundle == (1.5, 1.0, 0.0, 0.0)


@pytest.mark.parametrize('r', [0.2, 0.5, 0.8])
def test_lift_derivatives_at_pi(r: float) -> None:
    bundle = lift_derivatives(MapParams(r, 0), math.pi)
    assert bundle.d1 == pytest.approx((1 + 3 * r) / (1 + r))
    assert bundle.d2 == pytest.approx(0, abs=1e-14)


@pytest.mark.parametrize('r', [0.1, 0.5, 0.9])
def test_lift_derivatives_finite_differences(r: float) -> None:
    p = MapParams(r, 0.3)
    x = np.linspace(-3, 3, 25)
    step = 1e-6
    bundle = lift_derivatives(p, x)
    below, above = lift_derivatives(p, x - step), lift_derivatives(p, x + step)
    assert_allclose((above.value - below.value) / (2 * step), bundle.d1, rtol=1e-6, atol=1e-6)
    assert_allclose((above.d1 - below.d1) / (2 * step), bundle.d2, rtol=1e-6, atol=1e-6)
    assert_allclose((above.d2 - below.d2) / (2 * step), bundle.d3, rtol=1e-6, atol=1e-5)


def test_lift_param_partials_finite_differences() -> None:
    x = np.linspace(-3, 3, 25)
    step = 1e-6
    dlift_dr, dslope_dr = lift_param_partials(MapParams(0.4, 0.7), x)
    below, above = MapParams(0.4 - step, 0.7), MapParams(0.4 + step, 0.7)
    assert_allclose((lift(above, x) - lift(below, x)) / (2 * step), dlift_dr, atol=1e-8)
    slopes = lift_derivatives(above, x).d1 - lift_derivatives(below, x).d1
    assert_allclose(slopes / (2 * step), dslope_dr, atol=1e-8)


def test_lift_iterate() -> None:
    p = MapParams(0.6, 1.0)
    value, slope = lift_iterate(p, 0.3, 3)
    x1 = lift(p, 0.3)
    x2 = lift(p, x1)
    assert value == pytest.approx(lift(p, x2))
    expected = np.prod([lift_derivatives(p, x).d1 for x in (0.3, x1, x2)])
    assert slope == pytest.approx(expected)


def test_lift_iterate_zero() -> None:
    assert lift_iterate(MapParams(0.6, 1.0), 0.3, 0) == (0.3, 1.0)


def test_iterate_multiplier_partial_first_order() -> None:
    p = MapParams(0.4, 0.7)
    x = np.linspace(-3, 3, 7)
    assert_allclose(iterate_multiplier_partial(p, x, 1), lift_param_partials(p, x).dslope_dr)


@pytest.mark.parametrize('n', [2, 3, 5])
def test_iterate_multiplier_partial_finite_differences(n: int) -> None:
    step = 1e-6
    below, above = MapParams(0.4 - step, 0.7), MapParams(0.4 + step, 0.7)
    estimate = (lift_iterate(above, 0.3, n)[1] - lift_iterate(below, 0.3, n)[1]) / (2 * step)
    assert iterate_multiplier_partial(MapParams(0.4, 0.7), 0.3, n) == pytest.approx(estimate, rel=1e-6, abs=1e-7)


def test_second_iterate_multiplier_partial_at_pitchfork() -> None:
    p = MapParams(1 / SQRT2, 0)
    assert second_iterate_multiplier_partial(p, math.pi / 4) == pytest.approx(8 * SQRT2)
    assert second_iterate_multiplier_partial_reduced(p, math.pi / 4) == pytest.approx(2 * SQRT2 - 8)
    assert symmetric_point_multiplier_partial(p, math.pi / 4) == pytest.approx(2 * SQRT2 - 8)


@pytest.mark.parametrize('r, omega, x', [(0.3, 0, 0), (0.3, 0, math.pi), (0.8, 0, math.pi)])
def test_symmetric_point_multiplier_partial_fixed_points(r: float, omega: float, x: float) -> None:
    p = MapParams(r, omega)
    assert second_iterate_multiplier_partial_reduced(p, x) == pytest.approx(symmetric_point_multiplier_partial(p, x))


@pytest.mark.parametrize('r', [0, 0.2, 0.5, 0.9])
def test_h_cubic_endpoints(r: float) -> None:
    assert h_cubic(r, -1) == pytest.approx(-2 * (1 + r) ** 3 * (1 + 3 * r), abs=1e-12)
    assert h_cubic(r, 1) == pytest.approx(2 * (1 - r) ** 3 * (1 - 3 * r), abs=1e-12)


@pytest.mark.parametrize('r', [0.4, 0.6, 0.95])
def test_schwarzian_negative(r: float) -> None:
    x_crit = math.acos((1 + 3 * r * r) / (4 * r))
    x = np.linspace(-3.1, 3.1, 63)
    x = x[(np.abs(np.abs(x) - x_crit) > 1e-2)]
    p = MapParams(r, 0.5)
    values = schwarzian(p, x)
    assert np.all(values < 0)
    assert_allclose(schwarzian_closed_form(p, x), values, rtol=1e-9)


def test_schwarzian_critical_point() -> None:
    x_crit = math.acos(0.875)
    with pytest.raises(SingularPointError, match='critical point'):
        schwarzian(MapParams(0.5, 0), x_crit)
    with pytest.raises(SingularPointError, match='critical point'):
        schwarzian_closed_form(MapParams(0.5, 0), -x_crit)


@pytest.mark.parametrize('r', [0, 0.3, 0.9])
def test_blaschke_image(r: float, rng: np.random.Generator) -> None:
    x = rng.uniform(-math.pi, math.pi, 100)
    distance = circular_distance(blaschke_image(r, x), circle_map(MapParams(r, math.pi), x))
    assert_allclose(distance, 0, atol=1e-12)
