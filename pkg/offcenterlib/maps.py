"""This module defines the off-center reflection map and its derivatives.

A light source L sits at (r, 0) inside the unit circle. A ray leaving L towards
the point of angle x is reflected with the constant angular deviation
(pi - omega) / 2, and R(x) is the angle of the next point hit. The lift of this
circle map is

    R(x) = x + omega - 2 iota(x),

where the incident angle iota(x) = atan2(r sin x, 1 - r cos x) is odd and
2 pi-periodic. All kernels accept scalars or numpy arrays of angles.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .angles import Real, reduce_angle
from .errors import DomainError, SingularPointError
from .utils import ascount, asradius

__all__ = [
    'DerivBundle',
    'MapParams',
    'ParamPartials',
    'blaschke_image',
    'circle_map',
    'circle_step',
    'h_cubic',
    'incident_angle',
    'incident_angle_derivative',
    'incident_angle_series',
    'iterate_multiplier_partial',
    'lift',
    'lift_derivatives',
    'lift_iterate',
    'lift_param_partials',
    'schwarzian',
    'schwarzian_closed_form',
    'second_iterate_multiplier_partial',
    'second_iterate_multiplier_partial_reduced',
    'symmetric_point_multiplier_partial',
    'truncated_lift',
]


@dataclass(frozen=True)
class MapParams:
    """The parameters identifying one member of the off-center reflection family.

    Attributes:
        r: The distance between the light source and the center, 0 <= r < 1.
        omega: The rotation angle R(0), in radians, -pi < omega <= pi.
    """

    r: float
    omega: float

    def __post_init__(self) -> None:
        object.__setattr__(self, 'r', asradius(self.r))
        if not isinstance(self.omega, (int, float, np.number)) or isinstance(self.omega, bool):
            raise TypeError(f'Invalid omega of type {type(self.omega).__name__!r}: {self.omega}')
        omega = float(self.omega)
        if not -math.pi < omega <= math.pi:
            raise DomainError(f'The rotation angle must satisfy -pi < omega <= pi: {self.omega}')
        object.__setattr__(self, 'omega', omega)

    @property
    def is_symmetric(self) -> bool:
        """True if the map commutes with the reflection x -> -x, i.e. omega is 0 or pi."""
        return self.omega == 0 or self.omega == math.pi


class DerivBundle(NamedTuple):
    """The lift and its first three derivatives with respect to x."""

    value: Real
    d1: Real
    d2: Real
    d3: Real


class ParamPartials(NamedTuple):
    """The partial derivatives of the lift and of its slope with respect to r."""

    dlift_dr: Real
    dslope_dr: Real


def _asreal(value: Real) -> Real:
    if np.ndim(value) == 0:
        return float(value)
    return value


def _denominator(r: Real, cos_x: Real) -> Real:
    """Returns |e^{ix} - r|^2 = 1 - 2 r cos x + r^2, which is positive for r < 1."""
    return 1 - 2 * r * cos_x + r * r


def incident_angle(r: float, x: Real) -> Real:
    """Returns the incident angle iota(x) of the ray emitted towards the angle x.

    It is the argument of e^{ix} - r, minus x, and lies in
    [-(pi/2 - a_r), pi/2 - a_r] where cos a_r = r.

    Arguments:
        r: The radius of the light source.
        x: The angle(s) of the hit point, in radians.

    Raises:
        DomainError: When the radius does not satisfy 0 <= r < 1.

    Example:
        >>> from offcenterlib.maps import incident_angle
        >>> assert incident_angle(0.5, 0) == 0
    """
    r = asradius(r)
    return _asreal(np.arctan2(r * np.sin(x), 1 - r * np.cos(x)))


def incident_angle_series(r: float, x: Real, order: int) -> Real:
    """Returns the partial sum of the series sum_k r^k sin(kx) / k, up to k = order.

    The truncation error is bounded by r^(order + 1) / ((order + 1)(1 - r)).
    """
    r = asradius(r)
    order = ascount(order, 'truncation order', minimum=1)
    k = np.arange(1, order + 1)
    terms = r**k / k * np.sin(np.multiply.outer(x, k))
    return _asreal(terms.sum(axis=-1))


def incident_angle_derivative(r: float, x: Real) -> Real:
    """Returns d iota / dx = r (cos x - r) / (1 - 2 r cos x + r^2)."""
    r = asradius(r)
    cos_x = np.cos(x)
    return _asreal(r * (cos_x - r) / _denominator(r, cos_x))


def circle_step(r: Real, omega: Real, x: Real) -> Real:
    """Returns the lift for broadcastable arrays of radii, rotation angles and angles.

    No validation is performed: this is the kernel used by the parameter sweeps.
    """
    return x + omega - 2 * np.arctan2(r * np.sin(x), 1 - r * np.cos(x))


def lift(p: MapParams, x: Real) -> Real:
    """Returns the lift R(x) = x + omega - 2 iota(x), without angle reduction.

    The lift satisfies R(0) = omega and R(x + 2 pi) = R(x) + 2 pi.

    Arguments:
        p: The map parameters.
        x: The angle(s), in radians.

    Example:
        >>> from offcenterlib.maps import MapParams, lift
        >>> assert lift(MapParams(0.3, 1.0), 0) == 1.0
    """
    return _asreal(circle_step(p.r, p.omega, x))


def circle_map(p: MapParams, x: Real) -> Real:
    """Returns R(x) reduced to the principal range (-pi, pi]."""
    return reduce_angle(circle_step(p.r, p.omega, x))


def truncated_lift(p: MapParams, x: Real, order: int) -> Real:
    """Returns the lift in which the incident angle is replaced by its truncated series.

    For `order=1`, this is the Arnold circle map x + omega - 2 r sin x.
    """
    return _asreal(x + p.omega - 2 * incident_angle_series(p.r, x, order))


def lift_derivatives(p: MapParams, x: Real) -> DerivBundle:
    """Returns the lift and its first three derivatives with respect to x.

    With D = 1 - 2 r cos x + r^2, the derivatives are

        R'   = (1 - 4 r cos x + 3 r^2) / D
        R''  = 2 r (1 - r^2) sin x / D^2
        R''' = 2 r (1 - r^2) ((1 + r^2) cos x - 2 r (1 + sin^2 x)) / D^3

    Arguments:
        p: The map parameters.
        x: The angle(s), in radians.

    Returns:
        The bundle (value, d1, d2, d3).
    """
    r = p.r
    cos_x = np.cos(x)
    sin_x = np.sin(x)
    denominator = _denominator(r, cos_x)
    scale = 2 * r * (1 - r * r)
    value = circle_step(r, p.omega, x)
    d1 = (1 - 4 * r * cos_x + 3 * r * r) / denominator
    d2 = scale * sin_x / denominator**2
    d3 = scale * ((1 + r * r) * cos_x - 2 * r * (1 + sin_x**2)) / denominator**3
    return DerivBundle(_asreal(value), _asreal(d1), _asreal(d2), _asreal(d3))


def lift_param_partials(p: MapParams, x: Real) -> ParamPartials:
    """Returns the partial derivatives of R and R' with respect to r.

    They do not depend on omega:

        dR/dr  = -2 sin x / D
        dR'/dr = (4 r - 2 (1 + r^2) cos x) / D^2
    """
    r = p.r
    cos_x = np.cos(x)
    denominator = _denominator(r, cos_x)
    dlift_dr = -2 * np.sin(x) / denominator
    dslope_dr = (4 * r - 2 * (1 + r * r) * cos_x) / denominator**2
    return ParamPartials(_asreal(dlift_dr), _asreal(dslope_dr))


def lift_iterate(p: MapParams, x: Real, n: int) -> tuple[Real, Real]:
    """Returns the n-th iterate of the lift and its derivative with respect to x.

    Arguments:
        p: The map parameters.
        x: The starting angle(s).
        n: The number of iterations.

    Returns:
        The unreduced value of R^n(x) and the product of R' along the orbit.
    """
    n = ascount(n, 'number of iterations')
    value = np.asarray(x, dtype=float)
    slope = np.ones_like(value)
    for _ in range(n):
        bundle = lift_derivatives(p, value)
        slope = slope * bundle.d1
        value = np.asarray(bundle.value)
    return _asreal(value), _asreal(slope)


def iterate_multiplier_partial(p: MapParams, x: Real, n: int) -> Real:
    """Returns the partial derivative with respect to r of (R^n)'(x), at fixed x.

    The derivative is accumulated forward along the orbit x_0 = x, x_1, ...,
    x_{n-1}, including the dependence of each orbit point on r.

    Arguments:
        p: The map parameters.
        x: The base point(s).
        n: The iterate order, at least 1.
    """
    n = ascount(n, 'iterate order', minimum=1)
    y = np.asarray(x, dtype=float)
    dy = np.zeros_like(y)
    mult = np.ones_like(y)
    dmult = np.zeros_like(y)
    for _ in range(n):
        value, d1, d2, _ = lift_derivatives(p, y)
        dlift_dr, dslope_dr = lift_param_partials(p, y)
        dmult = dmult * d1 + mult * (dslope_dr + d2 * dy)
        mult = mult * d1
        dy = dlift_dr + d1 * dy
        y = np.asarray(value)
    return _asreal(dmult)


def second_iterate_multiplier_partial(p: MapParams, x: Real) -> Real:
    """Returns d/dr of (R^2)'(x) = R'(x) R'(R(x)), by the full chain rule.

    Example:
        >>> import math
        >>> from offcenterlib.maps import MapParams, second_iterate_multiplier_partial
        >>> p = MapParams(1 / math.sqrt(2), 0)
        >>> value = second_iterate_multiplier_partial(p, math.pi / 4)
        >>> assert math.isclose(value, 8 * math.sqrt(2))
    """
    return iterate_multiplier_partial(p, x, 2)


def second_iterate_multiplier_partial_reduced(p: MapParams, x: Real) -> Real:
    """Returns the first-order chain-rule expression of d/dr (R^2)'(x).

    The expression is dR'/dr(x) R'(R x) + R'(x) dR'/dr(R x) dR/dr(x). It omits the
    curvature term R''(R x) dR/dr(x) of the full derivative and coincides with
    `symmetric_point_multiplier_partial` whenever R(x) = x or R(x) = -x modulo 2 pi.
    """
    image = circle_step(p.r, p.omega, x)
    slope = lift_derivatives(p, x).d1
    image_slope = lift_derivatives(p, image).d1
    dlift_dr, dslope_dr = lift_param_partials(p, x)
    image_dslope_dr = lift_param_partials(p, image).dslope_dr
    return _asreal(dslope_dr * image_slope + slope * image_dslope_dr * dlift_dr)


def symmetric_point_multiplier_partial(p: MapParams, x: Real) -> Real:
    """Returns the product R'(x) dR'/dr(x) (1 + dR/dr(x)).

    This is the value of `second_iterate_multiplier_partial_reduced` at the points
    of a fixed point or of a symmetric 2-cycle.
    """
    slope = lift_derivatives(p, x).d1
    dlift_dr, dslope_dr = lift_param_partials(p, x)
    return _asreal(slope * dslope_dr * (1 + dlift_dr))


def h_cubic(r: Real, y: Real) -> Real:
    """Returns the cubic H(r, y) which sets the sign of the Schwarzian derivative.

    H(r, y) = -(14 r + 18 r^3) + (2 + 40 r^2 + 6 r^4) y + 2 r (1 - r^2) y^2 - 16 r^2 y^3

    It satisfies H(r, -1) = -2 (1 + r)^3 (1 + 3 r) and H(r, 1) = 2 (1 - r)^3 (1 - 3 r).
    """
    r2 = np.multiply(r, r)
    coefficients = (
        -(14 * r + 18 * r * r2),
        2 + 40 * r2 + 6 * r2 * r2,
        2 * np.multiply(r, 1 - r2),
        -16 * r2,
    )
    result = coefficients[3]
    for coefficient in coefficients[2::-1]:
        result = result * y + coefficient
    return _asreal(result)


def _check_regular(slope: Real) -> None:
    if np.any(np.abs(slope) < 1e-12):
        raise SingularPointError('The Schwarzian derivative is undefined at a critical point.')


def schwarzian(p: MapParams, x: Real) -> Real:
    """Returns the Schwarzian derivative R'''/R' - 3/2 (R''/R')^2 of the lift.

    Arguments:
        p: The map parameters.
        x: The angle(s), away from the critical points.

    Raises:
        SingularPointError: When R'(x) vanishes.
    """
    _, d1, d2, d3 = lift_derivatives(p, x)
    _check_regular(d1)
    ratio = np.divide(d2, d1)
    return _asreal(np.divide(d3, d1) - 1.5 * ratio * ratio)


def schwarzian_closed_form(p: MapParams, x: Real) -> Real:
    """Returns the Schwarzian derivative as r (1 - r^2) H(r, cos x) / (N^2 D^2).

    N = 1 - 4 r cos x + 3 r^2 is the numerator of R' and D = 1 - 2 r cos x + r^2.

    Raises:
        SingularPointError: When R'(x) vanishes.
    """
    r = p.r
    cos_x = np.cos(x)
    numerator = 1 - 4 * r * cos_x + 3 * r * r
    denominator = _denominator(r, cos_x)
    _check_regular(numerator / denominator)
    return _asreal(r * (1 - r * r) * h_cubic(r, cos_x) / (numerator * denominator) ** 2)


def blaschke_image(r: float, x: Real) -> Real:
    """Returns the image of the angle x by the Blaschke product -z^2 (1 - r z) / (z - r).

    On the unit circle, this rational map coincides with the off-center reflection
    of rotation angle pi.

    Arguments:
        r: The radius of the light source.
        x: The angle(s), in radians.

    Returns:
        The argument of the image, in (-pi, pi].

    Example:
        >>> import math
        >>> from offcenterlib.maps import blaschke_image
        >>> assert blaschke_image(0.5, 0) == math.pi
    """
    r = asradius(r)
    z = np.exp(1j * np.asarray(x, dtype=float))
    image = -(z**2) * (1 - r * z) / (z - r)
    return reduce_angle(np.angle(image))
