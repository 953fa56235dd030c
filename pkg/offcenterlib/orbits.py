"""This module finds and classifies the periodic orbits of the off-center reflection.

Periodic orbits are searched as roots of R^n(x) - x - 2 pi k on a uniform grid,
which is shifted by half a cell so that the reflection-invariant angles 0 and pi
are never grid points. Attractors are detected by iterating the two critical
points, since every attracting cycle of a map with negative Schwarzian derivative
attracts at least one of them.
"""
from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Callable, NamedTuple, Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import optimize

from .angles import TWO_PI, Real, circular_distance, reduce_angle
from .config import ORBIT_SETTINGS
from .errors import DomainError, ResolutionWarning
from .maps import MapParams, circle_step, lift_derivatives, lift_iterate
from .solvers import find_brackets, refine_root
from .utils import ascount, asradius, set_distance

__all__ = [
    'AttractorCensus',
    'CriticalPair',
    'CycleRecord',
    'Stability',
    'Symmetry',
    'asymptotic_orbit',
    'classify_stability',
    'classify_symmetry',
    'critical_points',
    'detect_attractors',
    'detect_period',
    'find_cycles',
    'find_symmetric_cycles',
    'iterate',
    'multiplier',
]

logger = logging.getLogger(__name__)

MIN_GRID = 512
SYMMETRY_TOL = 1e-7
ATTRACTOR_DEDUP_TOL = 1e-6


class Stability(str, Enum):
    ATTRACTING = 'attracting'
    REPELLING = 'repelling'
    NEUTRAL = 'neutral'


class Symmetry(str, Enum):
    """Behavior of a cycle under the reflection x -> -x, for omega in {0, pi}."""

    SYMMETRIC = 'symmetric'
    ASYMMETRIC = 'asymmetric'
    SELF_TWIN = 'self_twin'


@dataclass(frozen=True)
class CycleRecord:
    """A periodic orbit.

    Attributes:
        period: The prime period.
        points: The points of the orbit, sorted in (-pi, pi].
        multiplier: The product of R' over the orbit.
        stability: The stability class derived from the multiplier.
        symmetry: The symmetry class, or None when omega is neither 0 nor pi.
        twin_of: The points of the reflected cycle, for asymmetric cycles.
    """

    period: int
    points: tuple[float, ...]
    multiplier: float
    stability: Stability
    symmetry: Symmetry | None = None
    twin_of: tuple[float, ...] | None = None

    def reflected(self) -> tuple[float, ...]:
        """Returns the sorted points of the image of the cycle by x -> -x."""
        return _sorted_points(-np.asarray(self.points))


class CriticalPair(NamedTuple):
    """The two critical points of the map, where R' vanishes."""

    x_plus: float
    x_minus: float


@dataclass(frozen=True)
class AttractorCensus:
    """The attracting cycles reached from the critical points.

    Attributes:
        cycles: The distinct cycles reached by the critical orbits.
        aperiodic_at_resolution: True if a critical orbit did not settle on a cycle
            of period up to the detection cap.
        seed_cycles: For the seeds (x_plus, x_minus), the index in `cycles` of the
            cycle they settle on, or None.
    """

    cycles: tuple[CycleRecord, ...]
    aperiodic_at_resolution: bool
    seed_cycles: tuple[int | None, int | None]

    @property
    def multiplicity(self) -> int:
        """The number of attractors, a self-twin attractor being counted twice."""
        return sum(2 if c.symmetry is Symmetry.SELF_TWIN else 1 for c in self.cycles)


def _sorted_points(points: ArrayLike) -> tuple[float, ...]:
    return tuple(sorted(float(x) for x in np.atleast_1d(reduce_angle(np.asarray(points)))))


def iterate(p: MapParams, x0: float, n: int, lift: bool = False) -> NDArray[np.float64]:
    """Returns the orbit x0, R(x0), ..., R^n(x0).

    Arguments:
        p: The map parameters.
        x0: The starting angle.
        n: The number of iterations.
        lift: If true, the iterates of the lift are returned without reduction.

    Example:
        >>> import math
        >>> from offcenterlib.maps import MapParams
        >>> from offcenterlib.orbits import iterate
        >>> orbit = iterate(MapParams(0.3, math.pi), 0, 2)
    """
    n = ascount(n, 'number of iterations')
    orbit = np.empty(n + 1)
    orbit[0] = x = float(x0)
    for index in range(1, n + 1):
        x = circle_step(p.r, p.omega, x)
        if not lift:
            x = reduce_angle(x)
        orbit[index] = x
    return orbit


def critical_points(r: float) -> CriticalPair:
    """Returns the critical points, solutions of cos x = (1 + 3 r^2) / (4 r).

    Raises:
        DomainError: When r <= 1/3, in which case the map is a homeomorphism.
    """
    r = asradius(r)
    if 3 * r <= 1:
        raise DomainError(f'The map has critical points only for r > 1/3: {r}')
    x_plus = math.acos(min((1 + 3 * r * r) / (4 * r), 1.0))
    return CriticalPair(x_plus, -x_plus)


def multiplier(p: MapParams, points: Sequence[float]) -> float:
    """Returns the product of R' over the points of a cycle."""
    return float(np.prod(lift_derivatives(p, np.asarray(points, dtype=float)).d1))


def classify_stability(value: float, neutral_band: float = ORBIT_SETTINGS.neutral_band) -> Stability:
    """Returns the stability class of a cycle from its multiplier."""
    if abs(value) < 1 - neutral_band:
        return Stability.ATTRACTING
    if abs(value) > 1 + neutral_band:
        return Stability.REPELLING
    return Stability.NEUTRAL


def classify_symmetry(
    p: MapParams, points: Sequence[float], tol: float = SYMMETRY_TOL
) -> tuple[Symmetry, tuple[float, ...] | None]:
    """Classifies a cycle with respect to the reflection x -> -x.

    A cycle is symmetric if its point set is invariant and R^(n/2)(x) = -x, or if it
    is a fixed point at 0 or pi. It is self-twin if its point set is invariant
    without being symmetric, and asymmetric otherwise.

    Arguments:
        p: The map parameters, with omega equal to 0 or pi.
        points: The points of the cycle.
        tol: The circular distance under which two angles are identified.

    Raises:
        DomainError: When the map does not commute with the reflection.

    Returns:
        The symmetry class, and the points of the twin cycle for asymmetric cycles.
    """
    if not p.is_symmetric:
        raise DomainError(f'The map commutes with x -> -x only for omega in {{0, pi}}: {p.omega}')
    points = _sorted_points(points)
    reflected = _sorted_points(-np.asarray(points))
    if set_distance(points, reflected) >= tol:
        return Symmetry.ASYMMETRIC, reflected

    period = len(points)
    if period == 1:
        return Symmetry.SYMMETRIC, None
    if period % 2 == 0:
        half_image = iterate(p, points[0], period // 2)[-1]
        if circular_distance(half_image, -points[0]) < tol:
            return Symmetry.SYMMETRIC, None
    return Symmetry.SELF_TWIN, None


def _make_record(p: MapParams, points: Sequence[float], symmetry: Symmetry | None = None) -> CycleRecord:
    points = _sorted_points(points)
    value = multiplier(p, points)
    twin = None
    if symmetry is None and p.is_symmetric:
        symmetry, twin = classify_symmetry(p, points)
    return CycleRecord(
        period=len(points),
        points=points,
        multiplier=value,
        stability=classify_stability(value),
        symmetry=symmetry,
        twin_of=twin,
    )


def _prime_period(p: MapParams, x: float, n: int, tol: float) -> int | None:
    """Returns the smallest divisor d of n such that R^d(x) = x, or None."""
    orbit = iterate(p, x, n)
    for d in range(1, n + 1):
        if n % d == 0 and circular_distance(orbit[d], x) < tol:
            return d
    return None


def _grid_roots(
    p: MapParams,
    n: int,
    sign: int,
    grid: int,
    k_bound: int | None,
) -> list[float]:
    """Returns the roots of R^n(x) + sign x - 2 pi k in (-pi, pi], for all integers k."""
    size = grid * n
    size += size % 2
    step = TWO_PI / size
    xs = -math.pi + (np.arange(size + 1) + 0.5) * step
    values, _ = lift_iterate(p, xs, n)
    values = values + sign * xs

    k_min = math.floor(values.min() / TWO_PI)
    k_max = math.ceil(values.max() / TWO_PI)
    if k_bound is not None:
        k_min, k_max = max(k_min, -k_bound), min(k_max, k_bound)

    roots = []
    for k in range(k_min, k_max + 1):
        shifted = values - TWO_PI * k
        exact, changes = find_brackets(shifted)
        roots.extend(xs[exact])
        if changes.size == 0:
            continue
        func, fprime = _shifted_iterate(p, n, sign, k)
        roots.extend(refine_root(func, fprime, xs[i], xs[i + 1]) for i in changes)

    logger.debug('Found %d roots of R^%d(x) %+d x = 2 pi k on %d points.', len(roots), n, sign, size)
    roots = sorted(float(reduce_angle(x)) for x in roots)
    _warn_close_roots(roots, step)
    return roots


def _shifted_iterate(
    p: MapParams, n: int, sign: int, k: int
) -> tuple[Callable[[float], float], Callable[[float], float]]:
    def func(x: float) -> float:
        return float(lift_iterate(p, x, n)[0] + sign * x - TWO_PI * k)

    def fprime(x: float) -> float:
        return float(lift_iterate(p, x, n)[1] + sign)

    return func, fprime


def _warn_close_roots(roots: list[float], step: float) -> None:
    if len(roots) < 2:
        return
    gaps = circular_distance(np.array(roots), np.roll(roots, 1))
    close = (gaps > ORBIT_SETTINGS.dedup_tol) & (gaps < step)
    if np.any(close):
        warnings.warn(
            f'{int(close.sum())} pair(s) of distinct roots are closer than the grid cell '
            f'{step:.3g}; roots within a cell may be missed. Increase the grid density.',
            ResolutionWarning,
            stacklevel=4,
        )


def _check_search(p: MapParams, n: int, grid: int, name: str, factor: int = 1) -> tuple[int, int]:
    n = ascount(n, name, minimum=1)
    grid = ascount(grid, 'grid density', minimum=MIN_GRID)
    if p.r == 0:
        # Rigid rotation: every point is periodic or none is.
        if circular_distance(factor * n * p.omega, 0) < 1e-12:
            raise DomainError(f'The periodic orbits of the rotation by {p.omega} are not isolated.')
    return n, grid


def _collect_cycles(p: MapParams, roots: list[float], period: int, symmetry: Symmetry | None) -> list[CycleRecord]:
    tol = ORBIT_SETTINGS.dedup_tol
    cycles: list[CycleRecord] = []
    assigned = np.zeros(len(roots), dtype=bool)
    root_array = np.array(roots)
    for index, root in enumerate(roots):
        if assigned[index]:
            continue
        assigned[index] = True
        if _prime_period(p, root, period, ORBIT_SETTINGS.closure_tol) != period:
            continue
        points = iterate(p, root, period - 1)
        distances = circular_distance(root_array[:, None], points[None, :])
        assigned |= distances.min(axis=1) < tol
        cycles.append(_make_record(p, points, symmetry))
    return sorted(cycles, key=lambda c: c.points)


def find_cycles(p: MapParams, n: int, grid: int = ORBIT_SETTINGS.grid) -> list[CycleRecord]:
    """Returns all the cycles of prime period n.

    The solutions of R^n(x) = x + 2 pi k, |k| <= n, are bracketed on a grid of
    `grid * n` points, then refined by bisection and Newton iterations.

    Arguments:
        p: The map parameters.
        n: The prime period.
        grid: The number of grid points per unit period, at least 512.

    Raises:
        DomainError: When the arguments are invalid, or when r = 0 and all the
            orbits are periodic with period n.

    Warns:
        ResolutionWarning: When two distinct roots are closer than one grid cell.

    Returns:
        The cycles, sorted by their points.

    Example:
        >>> from offcenterlib.maps import MapParams
        >>> from offcenterlib.orbits import find_cycles
        >>> cycles = find_cycles(MapParams(0.5, 0), 1)
        >>> assert len(cycles) == 2
    """
    n, grid = _check_search(p, n, grid, 'period')
    if p.r == 0:
        return []
    roots = _grid_roots(p, n, -1, grid, k_bound=n)
    return _collect_cycles(p, roots, n, None)


def find_symmetric_cycles(p: MapParams, half_period: int, grid: int = ORBIT_SETTINGS.grid) -> list[CycleRecord]:
    """Returns the symmetric cycles of prime period 2 m.

    They are the solutions of R^m(x) = -x + 2 pi k for which R^m(x) is not x.

    Arguments:
        p: The map parameters, with omega equal to 0 or pi.
        half_period: The half-period m.
        grid: The number of grid points per unit period, at least 512.

    Raises:
        DomainError: When omega is neither 0 nor pi, or when the arguments are invalid.
    """
    if not p.is_symmetric:
        raise DomainError(f'Symmetric cycles exist only for omega in {{0, pi}}: {p.omega}')
    m, grid = _check_search(p, half_period, grid, 'half-period', factor=2)
    if p.r == 0:
        return []
    roots = _grid_roots(p, m, 1, grid, k_bound=None)
    tol = ORBIT_SETTINGS.closure_tol
    roots = [x for x in roots if circular_distance(iterate(p, x, m)[-1], x) >= tol]
    return _collect_cycles(p, roots, 2 * m, Symmetry.SYMMETRIC)


def asymptotic_orbit(
    p: MapParams,
    x0: Real,
    transient: int = ORBIT_SETTINGS.transient,
    samples: int = ORBIT_SETTINGS.samples,
) -> NDArray[np.float64]:
    """Returns the iterates recorded after a transient.

    Arguments:
        p: The map parameters.
        x0: The starting angle, or an array of starting angles.
        transient: The number of discarded iterations.
        samples: The number of recorded iterations.

    Returns:
        The array of shape (samples,) + shape(x0) of the iterates of indices
        transient + 1 to transient + samples.
    """
    transient = ascount(transient, 'transient')
    samples = ascount(samples, 'number of samples', minimum=1)
    x = np.asarray(x0, dtype=float)
    for _ in range(transient):
        x = reduce_angle(circle_step(p.r, p.omega, x))
    orbit = np.empty((samples,) + x.shape)
    for index in range(samples):
        x = reduce_angle(circle_step(p.r, p.omega, x))
        orbit[index] = x
    return orbit


def detect_period(
    samples: ArrayLike,
    max_period: int = ORBIT_SETTINGS.max_period,
    tol: float = ORBIT_SETTINGS.convergence_tol,
) -> int | None:
    """Returns the smallest period q such that the samples shifted by q match, or None."""
    samples = np.asarray(samples, dtype=float)
    for period in range(1, min(max_period, samples.size // 2) + 1):
        if np.all(circular_distance(samples[period:], samples[:-period]) < tol):
            return period
    return None


def _polish_cycle_point(p: MapParams, x: float, period: int) -> float:
    winding = round((lift_iterate(p, x, period)[0] - x) / TWO_PI)
    func, fprime = _shifted_iterate(p, period, -1, winding)
    with warnings.catch_warnings():
        warnings.simplefilter('ignore', RuntimeWarning)
        root, result = optimize.newton(func, x, fprime=fprime, maxiter=20, full_output=True, disp=False)
    if result.converged and circular_distance(root, x) < ATTRACTOR_DEDUP_TOL:
        return float(root)
    return x


def detect_attractors(
    p: MapParams,
    *,
    transient: int = ORBIT_SETTINGS.transient,
    samples: int = ORBIT_SETTINGS.samples,
    max_period: int = ORBIT_SETTINGS.max_period,
    tol: float = ORBIT_SETTINGS.convergence_tol,
) -> AttractorCensus:
    """Returns the cycles on which the orbits of the two critical points settle.

    Arguments:
        p: The map parameters, with r > 1/3.
        transient: The number of discarded iterations.
        samples: The number of iterations used to detect the period.
        max_period: The largest detected period.
        tol: The tolerance of the period detection.

    Raises:
        DomainError: When r <= 1/3.

    Example:
        >>> import math
        >>> from offcenterlib.maps import MapParams
        >>> from offcenterlib.orbits import detect_attractors
        >>> census = detect_attractors(MapParams(0.4, math.pi))
        >>> assert census.cycles[0].symmetry == 'self_twin'
    """
    seeds = np.array(critical_points(p.r))
    orbits = asymptotic_orbit(p, seeds, transient, samples)

    cycles: list[CycleRecord] = []
    seed_cycles: list[int | None] = []
    aperiodic = False
    for seed_index in range(seeds.size):
        period = detect_period(orbits[:, seed_index], max_period, tol)
        if period is None:
            logger.warning('No period up to %d for the critical orbit %d at %s.', max_period, seed_index, p)
            aperiodic = True
            seed_cycles.append(None)
            continue
        x = _polish_cycle_point(p, float(orbits[-1, seed_index]), period)
        points = iterate(p, x, period - 1)
        for index, cycle in enumerate(cycles):
            if set_distance(cycle.points, points) < ATTRACTOR_DEDUP_TOL:
                seed_cycles.append(index)
                break
        else:
            cycles.append(_make_record(p, points))
            seed_cycles.append(len(cycles) - 1)

    return AttractorCensus(tuple(cycles), aperiodic, (seed_cycles[0], seed_cycles[1]))
