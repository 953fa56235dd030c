"""This module locates the bifurcations of the off-center reflection family.

It gathers the closed-form boundary curves of the (r, omega) plane, the branches
of symmetric cycles at omega = 0 and omega = pi, and the numerically solved
bifurcation constants:

- `pd_2cycle`: the period doubling of the 2-cycle {0, pi} at omega = pi, r = 1/sqrt(5).
- `pf_2cycle`: the pitchfork of the symmetric 2-cycle at omega = 0, r = 1/sqrt(2).
- `pf_4cycle`: the pitchfork of the symmetric 4-cycle at omega = pi, r ~ 0.57.
- `degenerate`: the radius at which the period doubling of the fixed points is
  not transversal.
"""
from __future__ import annotations

import functools
import logging
import math
from enum import Enum
from typing import Callable, NamedTuple

import numpy as np
from numpy.polynomial import polynomial
from numpy.typing import NDArray
from scipy import optimize

from .angles import TWO_PI, Real, circular_distance, reduce_angle
from .errors import ConvergenceError, DomainError
from .maps import (
    MapParams,
    circle_step,
    incident_angle,
    incident_angle_derivative,
    iterate_multiplier_partial,
    lift_iterate,
    lift_param_partials,
)
from .orbits import (
    CycleRecord,
    Symmetry,
    classify_stability,
    find_symmetric_cycles,
    multiplier,
)
from .solvers import find_brackets, refine_root, solve_bracketed
from .utils import ascount, asradius

__all__ = [
    'BifurcationConstant',
    'CURVE_IDS',
    'CurveSample',
    'QuarticCoefficients',
    'QuarticForm',
    'QuarticSolution',
    'Region',
    'RegionClass',
    'angle_a',
    'angle_b',
    'bifurcation_constants',
    'bifurcation_points',
    'classify_region',
    'degenerate_r',
    'degenerate_r_closed_form',
    'f_eval',
    'f_prime_at_pi',
    'f_zeros',
    'period_doubling_fp_curve',
    'quartic_coefficients',
    'saddle_node_curve',
    'sample_curve',
    'symmetric4_point',
    'symmetric4_quartic',
    'symmetric4_slope',
    'transversality_factor',
    'two_cycle_branch',
]

logger = logging.getLogger(__name__)

QUARTIC_IMAG_TOL = 1e-9
QUARTIC_VALIDATION_TOL = 1e-6
DEFAULT_CURVE_STEPS = 400


def angle_a(r: float) -> float:
    """Returns a_r = arccos r, where R' = 1 and the incident angle is maximal."""
    return math.acos(asradius(r))


def angle_b(r: float) -> float:
    """Returns b_r in [0, a_r), such that cos b_r = (1 + 2 r^2) / (3 r) and R'(b_r) = -1.

    Raises:
        DomainError: When r < 1/2.

    Example:
        >>> from offcenterlib.bifurcations import angle_b
        >>> assert angle_b(0.5) == 0
    """
    r = asradius(r)
    if r < 0.5:
        raise DomainError(f'The angle b_r is defined only for 1/2 <= r < 1: {r}')
    return math.acos(min((1 + 2 * r * r) / (3 * r), 1.0))


def saddle_node_curve(r: float) -> float:
    """Returns the magnitude pi - 2 a_r of the rotation angles at the saddle-node boundary.

    Fixed points exist if and only if |omega| <= pi - 2 a_r.
    """
    return math.pi - 2 * angle_a(r)


def period_doubling_fp_curve(r: float) -> float:
    """Returns the magnitude 2 iota(b_r) of the rotation angles at which a fixed point has R' = -1.

    Raises:
        DomainError: When r <= 1/2.
    """
    r = asradius(r)
    if r <= 0.5:
        raise DomainError(f'The fixed points period-double only for 1/2 < r < 1: {r}')
    return 2 * incident_angle(r, angle_b(r))


def transversality_factor(r: float) -> float:
    """Returns 1 + dR/dr at b_r, which vanishes at the degenerate radius."""
    return 1 + lift_param_partials(MapParams(r, 0), angle_b(r)).dlift_dr


def _degenerate_polynomial(r: float) -> float:
    r2 = r * r
    return r2 * r2 + 15 * r2 - 4


def degenerate_r() -> float:
    """Returns the root in (1/2, 1) of r^4 + 15 r^2 - 4, solved by bisection.

    At this radius, the transversality factor of the period doubling of the fixed
    points vanishes.
    """
    return float(optimize.bisect(_degenerate_polynomial, 0.5, 0.6, xtol=1e-12))


def degenerate_r_closed_form() -> float:
    """Returns sqrt((sqrt(241) - 15) / 2)."""
    return math.sqrt((math.sqrt(241) - 15) / 2)


def two_cycle_branch(r: float, omega: float) -> CycleRecord:
    """Returns the symmetric 2-cycle {-c, c} of the maps with omega = 0 or pi.

    For omega = 0, cos c1 = 1 / (2 r) and the multiplier is ((1 - 3 r^2) / r^2)^2.
    For omega = pi, cos c2 = (1 - sqrt(1 + 8 r^2)) / (4 r) and the multiplier is
    (2 (s + 3 r^2) / (1 + s + 2 r^2))^2 with s = sqrt(1 + 8 r^2), which exceeds 1.

    Arguments:
        r: The radius of the light source.
        omega: The rotation angle, 0 or pi.

    Raises:
        DomainError: When omega is neither 0 nor pi, or when omega = 0 and r <= 1/2.
    """
    p = MapParams(r, omega)
    r = p.r
    if p.omega == 0:
        if r <= 0.5:
            raise DomainError(f'The symmetric 2-cycle at omega = 0 exists only for r > 1/2: {r}')
        c = math.acos(1 / (2 * r))
        value = ((1 - 3 * r * r) / (r * r)) ** 2
    elif p.omega == math.pi:
        root = math.sqrt(1 + 8 * r * r)
        c = math.acos(-2 * r / (1 + root))
        value = (2 * (root + 3 * r * r) / (1 + root + 2 * r * r)) ** 2
    else:
        raise DomainError(f'Symmetric 2-cycles are tabulated only for omega in {{0, pi}}: {omega}')
    return CycleRecord(
        period=2,
        points=(-c, c),
        multiplier=value,
        stability=classify_stability(value),
        symmetry=Symmetry.SYMMETRIC,
    )


def f_eval(r: float, x: Real) -> Real:
    """Returns f(x) = x - iota(x) - iota(x + pi - 2 iota(x)) + pi.

    At omega = pi, R^2(x) + x = 2 f(x), so that the symmetric 4-cycles are made of
    zeros of f modulo pi.
    """
    iota = incident_angle(r, x)
    return x - iota - incident_angle(r, np.add(x, math.pi) - 2 * iota) + math.pi


def _f_prime(r: float, x: Real) -> Real:
    slope = 1 - 2 * incident_angle_derivative(r, x)
    image = np.add(x, math.pi) - 2 * incident_angle(r, x)
    return 1 - incident_angle_derivative(r, x) - incident_angle_derivative(r, image) * slope


def f_prime_at_pi(r: float) -> float:
    """Returns f'(pi) = (1 - 5 r^2) / (1 - r^2), which vanishes at r = 1/sqrt(5)."""
    r = asradius(r)
    return (1 - 5 * r * r) / (1 - r * r)


def f_zeros(r: float, grid: int = 4096) -> list[float]:
    """Returns the zeros of f modulo pi in (-pi, pi], sorted.

    They consist of the points 0 and pi, and of the points of the symmetric 4-cycles
    of the map with omega = pi.
    """
    r = asradius(r)
    grid = ascount(grid, 'grid density', minimum=512)
    step = TWO_PI / grid
    xs = -math.pi + (np.arange(grid + 1) + 0.5) * step
    values = f_eval(r, xs)
    roots: list[float] = []
    for k in range(math.floor(values.min() / math.pi), math.ceil(values.max() / math.pi) + 1):
        exact, changes = find_brackets(values - math.pi * k)
        roots.extend(xs[exact])
        for index in changes:
            roots.append(
                refine_root(
                    lambda x, k=k: float(f_eval(r, x)) - math.pi * k,
                    lambda x: float(_f_prime(r, x)),
                    xs[index],
                    xs[index + 1],
                )
            )
    return sorted(float(reduce_angle(x)) for x in roots)


class QuarticForm(str, Enum):
    """The coefficient sets of the symmetric 4-cycle quartic in y = cos x.

    REFERENCE has the linear coefficient 2 r (1 + 7 r^3) as commonly quoted,
    ELIMINATED has the coefficient 2 r (1 + 7 r^2) obtained by elimination of the
    intermediate cycle point.
    """

    REFERENCE = 'reference'
    ELIMINATED = 'eliminated'


class QuarticCoefficients(NamedTuple):
    """The coefficients c0 + c1 y + c2 y^2 + c3 y^3 + c4 y^4."""

    c0: float
    c1: float
    c2: float
    c3: float
    c4: float


class QuarticSolution(NamedTuple):
    """The roots of the symmetric 4-cycle quartic and their dynamical validation.

    Attributes:
        coefficients: The quartic coefficients.
        roots: All the roots, as complex numbers.
        real_roots: The roots with negligible imaginary part, sorted.
        accepted: The cosines y in (-1, 1) for which x = arccos y satisfies
            R^2(x) = -x modulo 2 pi, sorted.
        rejected: The real roots which fail the validation, sorted.
    """

    coefficients: QuarticCoefficients
    roots: NDArray[np.complex128]
    real_roots: tuple[float, ...]
    accepted: tuple[float, ...]
    rejected: tuple[float, ...]


def quartic_coefficients(r: float, form: QuarticForm = QuarticForm.REFERENCE) -> QuarticCoefficients:
    """Returns the coefficients of the symmetric 4-cycle quartic at omega = pi.

    Example:
        >>> from offcenterlib.bifurcations import quartic_coefficients
        >>> assert quartic_coefficients(0.5) == (-1.9375, 1.875, 1.25, -3.0, 1.0)
    """
    r = asradius(r)
    r2 = r * r
    linear = 1 + 7 * r2 * r if QuarticForm(form) is QuarticForm.REFERENCE else 1 + 7 * r2
    return QuarticCoefficients(
        c0=-1 - 4 * r2 + r2 * r2,
        c1=2 * r * linear,
        c2=4 * r2 * (2 - 3 * r2),
        c3=-24 * r2 * r,
        c4=16 * r2 * r2,
    )


def _polish_polynomial_root(coefficients: QuarticCoefficients, root: complex) -> complex:
    derivative = polynomial.polyder(coefficients)
    for _ in range(5):
        slope = polynomial.polyval(root, derivative)
        if slope == 0:
            break
        root = root - polynomial.polyval(root, coefficients) / slope
    return complex(root)


def symmetric4_quartic(r: float, form: QuarticForm = QuarticForm.REFERENCE) -> QuarticSolution:
    """Solves the symmetric 4-cycle quartic and validates its roots dynamically.

    Arguments:
        r: The radius of the light source, 0 < r < 1.
        form: The coefficient set.

    Returns:
        The coefficients, the roots and the partition of the real roots into
        accepted cycle cosines and rejected values.
    """
    r = asradius(r)
    if r == 0:
        raise DomainError('The quartic is degenerate for r = 0.')
    coefficients = quartic_coefficients(r, form)
    roots = np.array([_polish_polynomial_root(coefficients, z) for z in polynomial.polyroots(coefficients)])
    real_roots = sorted(float(z.real) for z in roots if abs(z.imag) < QUARTIC_IMAG_TOL)

    p = MapParams(r, math.pi)
    accepted, rejected = [], []
    for y in real_roots:
        if -1 < y < 1:
            x = math.acos(y)
            image = circle_step(r, math.pi, circle_step(r, math.pi, x))
            if circular_distance(image, -x) < QUARTIC_VALIDATION_TOL:
                accepted.append(y)
                continue
        rejected.append(y)
    if rejected:
        logger.debug('Quartic (%s) roots failing validation at %s: %s', QuarticForm(form).value, p, rejected)
    return QuarticSolution(coefficients, roots, tuple(real_roots), tuple(accepted), tuple(rejected))


def symmetric4_point(r: float) -> float:
    """Returns the point x0 in (pi/2, pi) of the symmetric 4-cycle at omega = pi.

    The point is taken from the validated negative root of the eliminated quartic,
    then of the reference quartic, and finally from the numerical search of the
    symmetric cycles of half-period 2.

    Raises:
        ConvergenceError: When no symmetric 4-cycle is found, e.g. for r <= 1/sqrt(5).
    """
    for form in QuarticForm.ELIMINATED, QuarticForm.REFERENCE:
        negatives = [y for y in symmetric4_quartic(r, form).accepted if y < 0]
        if negatives:
            return math.acos(negatives[0])
        logger.debug('No validated negative root of the %s quartic at r=%r.', form.value, r)

    candidates = [
        x
        for cycle in find_symmetric_cycles(MapParams(r, math.pi), 2)
        for x in cycle.points
        if math.pi / 2 < x < math.pi
    ]
    if not candidates:
        raise ConvergenceError(f'No symmetric 4-cycle at omega = pi for r = {r}.')
    return max(candidates)


def symmetric4_slope(r: float) -> float:
    """Returns (R^2)'(x0) at omega = pi; the multiplier of the symmetric 4-cycle is its square."""
    return float(lift_iterate(MapParams(r, math.pi), symmetric4_point(r), 2)[1])


class BifurcationConstant(NamedTuple):
    """A numerically solved bifurcation constant.

    Attributes:
        name: The constant identifier.
        value: The solved value, or NaN when the solve failed.
        residual: The absolute value of the defining equation at the solved value.
        converged: False if the solve failed.
        error: The failure message, if any.
    """

    name: str
    value: float
    residual: float
    converged: bool = True
    error: str | None = None


def _solve_constant(
    name: str, equation: Callable[[float], float], lower: float, upper: float
) -> BifurcationConstant:
    try:
        value = solve_bracketed(equation, lower, upper, name=name)
    except ConvergenceError as exc:
        logger.warning('Bifurcation constant %s did not converge: %s', name, exc)
        return BifurcationConstant(name, math.nan, math.nan, False, str(exc))
    residual = abs(equation(value))
    logger.info('Bifurcation constant %s = %r (residual %.3g).', name, value, residual)
    return BifurcationConstant(name, value, residual)


def _pd_2cycle_equation(r: float) -> float:
    return multiplier(MapParams(r, math.pi), (0.0, math.pi)) + 1


def _pf_2cycle_equation(r: float) -> float:
    return multiplier(MapParams(r, 0), two_cycle_branch(r, 0).points) - 1


def _pf_4cycle_equation(r: float) -> float:
    return symmetric4_slope(r) - 1


def _pf_4cycle_transversality(r0: float) -> BifurcationConstant:
    name = 'pf_4cycle_transversality'
    if not math.isfinite(r0):
        return BifurcationConstant(name, math.nan, math.nan, False, 'pf_4cycle is not available.')
    try:
        x0 = symmetric4_point(r0)
    except ConvergenceError as exc:
        return BifurcationConstant(name, math.nan, math.nan, False, str(exc))
    p = MapParams(r0, math.pi)
    value = float(iterate_multiplier_partial(p, x0, 4))
    residual = abs(lift_iterate(p, x0, 4)[1] - 1)
    return BifurcationConstant(name, value, residual)


@functools.lru_cache(maxsize=None)
def bifurcation_constants() -> tuple[BifurcationConstant, ...]:
    """Returns the bifurcation constants, each solved on a bracket by Brent's method.

    The constants are `pd_2cycle`, `pf_2cycle`, `pf_4cycle` and `degenerate`, followed
    by `pf_4cycle_transversality`, the derivative with respect to r of the symmetric
    4-cycle multiplier at (r0, x0), which is non-zero for a transversal pitchfork.
    A solve failure is reported in the corresponding entry.
    """
    constants = [
        _solve_constant('pd_2cycle', _pd_2cycle_equation, 0.34, 0.6),
        _solve_constant('pf_2cycle', _pf_2cycle_equation, 0.55, 0.9),
        _solve_constant('pf_4cycle', _pf_4cycle_equation, 0.5, 0.7),
    ]
    value = degenerate_r()
    constants.append(BifurcationConstant('degenerate', value, abs(_degenerate_polynomial(value))))
    constants.append(_pf_4cycle_transversality(constants[2].value))
    return tuple(constants)


def _constant(name: str) -> float:
    for constant in bifurcation_constants():
        if constant.name == name:
            return constant.value
    raise KeyError(name)


class Region(str, Enum):
    INVERTIBLE = 'invertible'
    NO_FIXED_POINT = 'no_fixed_point'
    REPELLING_OR_SADDLE = 'fixed_points_repelling_or_saddle'
    ATTRACTING_FIXED_POINT = 'attracting_fixed_point'


class RegionClass(NamedTuple):
    """The class of the fixed-point dynamics at a point of the parameter plane."""

    r: float
    omega: float
    region: Region


def classify_region(r: float, omega: float) -> RegionClass:
    """Classifies a point of the parameter plane by its fixed points.

    Arguments:
        r: The radius of the light source.
        omega: The rotation angle, in (-pi, pi].

    Returns:
        `invertible` for r <= 1/3, `no_fixed_point` for |omega| > pi - 2 a_r,
        `attracting_fixed_point` for 2 iota(b_r) < |omega| < pi - 2 a_r (the lower
        bound being 0 for r <= 1/2), and `fixed_points_repelling_or_saddle` otherwise.
    """
    p = MapParams(r, omega)
    magnitude = abs(p.omega)
    upper = saddle_node_curve(p.r)
    if 3 * p.r <= 1:
        region = Region.INVERTIBLE
    elif magnitude > upper:
        region = Region.NO_FIXED_POINT
    else:
        lower = period_doubling_fp_curve(p.r) if p.r > 0.5 else -1.0
        if lower < magnitude < upper:
            region = Region.ATTRACTING_FIXED_POINT
        else:
            region = Region.REPELLING_OR_SADDLE
    return RegionClass(p.r, p.omega, region)


class CurveSample(NamedTuple):
    """A point of a bifurcation curve.

    Attributes:
        curve_id: The curve identifier.
        branch: '+' or '-', the sign of the branch.
        r: The radius.
        omega: The rotation angle.
        x: The location of the bifurcating orbit point on this branch.
    """

    curve_id: str
    branch: str
    r: float
    omega: float
    x: float


def _saddle_node_branch(r: float) -> tuple[float, float]:
    return saddle_node_curve(r), angle_a(r)


def _period_doubling_branch(r: float) -> tuple[float, float]:
    return period_doubling_fp_curve(r), angle_b(r)


def _c1_branch(r: float) -> tuple[float, float]:
    return 0.0, two_cycle_branch(r, 0).points[1]


def _c2_branch(r: float) -> tuple[float, float]:
    return math.pi, two_cycle_branch(r, math.pi).points[1]


def _symmetric4_branch(r: float) -> tuple[float, float]:
    return math.pi, symmetric4_point(r)


# which: (curve id, open lower bound of r, function of r returning (omega, x) on the + branch)
_CURVES: dict[str, tuple[str, float, Callable[[float], tuple[float, float]]]] = {
    'saddle-node': ('saddle_node', 0.0, _saddle_node_branch),
    'period-doubling': ('period_doubling_fp', 0.5, _period_doubling_branch),
    'c1': ('symmetric_2cycle_c1', 0.5, _c1_branch),
    'c2': ('symmetric_2cycle_c2', -1.0, _c2_branch),
    'symmetric-4cycle': ('symmetric_4cycle', 1 / math.sqrt(5), _symmetric4_branch),
}

CURVE_IDS = tuple(_CURVES) + ('bifurcation-points',)


def bifurcation_points() -> list[CurveSample]:
    """Returns the points of the parameter plane at which the symmetric cycles bifurcate."""
    r0 = _constant('pf_4cycle')
    points = [
        CurveSample('period_doubling_2cycle', '+', _constant('pd_2cycle'), math.pi, math.pi),
        CurveSample('pitchfork_2cycle', '+', _constant('pf_2cycle'), 0.0, math.pi / 4),
    ]
    if math.isfinite(r0):
        points.append(CurveSample('pitchfork_4cycle', '+', r0, math.pi, symmetric4_point(r0)))
    return points


def sample_curve(
    which: str, r_min: float, r_max: float, steps: int = DEFAULT_CURVE_STEPS
) -> list[CurveSample]:
    """Samples a bifurcation curve uniformly in r.

    Radii outside the validity interval of the curve are skipped. Each radius yields
    a sample on the '+' branch then on the '-' branch, whose omega and x are opposite.

    Arguments:
        which: One of 'saddle-node', 'period-doubling', 'c1', 'c2',
            'symmetric-4cycle' or 'bifurcation-points'.
        r_min: The smallest radius.
        r_max: The largest radius.
        steps: The number of radii.

    Raises:
        ValueError: When the curve is unknown.
        DomainError: When the radius interval is invalid.
    """
    if which == 'bifurcation-points':
        return bifurcation_points()
    try:
        curve_id, lower, branch = _CURVES[which]
    except KeyError:
        raise ValueError(f'Unknown curve: {which!r}.') from None
    r_min, r_max = asradius(r_min), asradius(r_max)
    if r_min > r_max:
        raise DomainError(f'The radius interval is empty: [{r_min}, {r_max}]')
    steps = ascount(steps, 'number of steps', minimum=1)

    samples = []
    for r in np.linspace(r_min, r_max, steps):
        r = float(r)
        if r <= lower:
            continue
        try:
            omega, x = branch(r)
        except ConvergenceError as exc:
            logger.warning('Skipping r=%r on %s: %s', r, curve_id, exc)
            continue
        samples.append(CurveSample(curve_id, '+', r, omega, x))
        samples.append(CurveSample(curve_id, '-', r, float(reduce_angle(-omega)), -x))
    return samples
