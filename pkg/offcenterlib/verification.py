"""This module re-verifies the dynamical properties of the family against oracles.

Every check compares a closed-form or library result with an independent numerical
oracle (grid scans, finite differences, direct iteration, the Blaschke product).
Checks are registered in a fixed order with the `check` decorator; their
identifiers are `<bundle>.<property>`, and a bundle name selects all its checks.

The report has one line per check,

    check_id<TAB>status<TAB>measured<TAB>expected<TAB>tolerance

followed by the summary line `TOTAL n PASS p FAIL f`.
"""
from __future__ import annotations

import functools
import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Mapping, NamedTuple

import numpy as np

from .angles import circular_distance, reduce_angle
from .bifurcations import (
    QuarticForm,
    Region,
    angle_a,
    angle_b,
    bifurcation_constants,
    classify_region,
    degenerate_r,
    degenerate_r_closed_form,
    f_eval,
    f_prime_at_pi,
    period_doubling_fp_curve,
    saddle_node_curve,
    symmetric4_quartic,
    transversality_factor,
    two_cycle_branch,
)
from .config import VERIFY_SETTINGS
from .csvio import format_cell
from .maps import (
    MapParams,
    blaschke_image,
    circle_map,
    h_cubic,
    incident_angle,
    lift,
    lift_derivatives,
    lift_iterate,
    lift_param_partials,
    schwarzian,
    schwarzian_closed_form,
    second_iterate_multiplier_partial,
    second_iterate_multiplier_partial_reduced,
    symmetric_point_multiplier_partial,
)
from .orbits import (
    AttractorCensus,
    Stability,
    Symmetry,
    classify_stability,
    detect_attractors,
    find_cycles,
    find_symmetric_cycles,
    multiplier,
)
from .utils import set_distance

__all__ = [
    'BUNDLE_ALIASES',
    'Measurement',
    'Status',
    'VerifyResult',
    'check',
    'format_report',
    'get_bundle_aliases',
    'get_check_ids',
    'verify',
]

logger = logging.getLogger(__name__)

INV_SQRT5 = 1 / math.sqrt(5)
INV_SQRT2 = 1 / math.sqrt(2)


class Status(str, Enum):
    PASS = 'PASS'
    FAIL = 'FAIL'


class Measurement(NamedTuple):
    """The outcome of a check, compared as `measured <relation> expected` within tolerance.

    The relation is `eq` for |measured - expected| <= tolerance, `le` for
    measured <= expected + tolerance and `gt` for measured > expected + tolerance.
    Categorical checks measure counts.
    """

    measured: float
    expected: float
    tolerance: float
    relation: str = 'eq'

    def passed(self) -> bool:
        if self.relation == 'eq':
            return abs(self.measured - self.expected) <= self.tolerance
        if self.relation == 'le':
            return self.measured <= self.expected + self.tolerance
        if self.relation == 'gt':
            return self.measured > self.expected + self.tolerance
        raise ValueError(f'Unknown relation: {self.relation!r}.')


@dataclass(frozen=True)
class VerifyResult:
    """The result of one check.

    Attributes:
        check_id: The check identifier.
        measured: The measured value or count.
        expected: The expected value or count.
        tolerance: The tolerance of the comparison.
        status: PASS or FAIL.
        runtime_ms: The duration of the check, in milliseconds.
        relation: The comparison relation, `eq`, `le` or `gt`.
    """

    check_id: str
    measured: float
    expected: float
    tolerance: float
    status: Status
    runtime_ms: int
    relation: str = 'eq'


CheckFunction = Callable[[np.random.Generator], Measurement]
_REGISTRY: dict[str, CheckFunction] = {}


def check(check_id: str) -> Callable[[CheckFunction], CheckFunction]:
    """Registers a check function under an identifier `<bundle>.<property>`."""

    def decorator(func: CheckFunction) -> CheckFunction:
        if check_id in _REGISTRY:
            raise ValueError(f'Duplicate check: {check_id!r}.')
        _REGISTRY[check_id] = func
        return func

    return decorator


def get_check_ids() -> tuple[str, ...]:
    """Returns the identifiers of the registered checks, in registration order."""
    return tuple(_REGISTRY)


def get_bundle_aliases() -> Mapping[str, str]:
    """Returns the numbered bundle names accepted in place of the check prefixes.

    Example:
        >>> from offcenterlib.verification import get_bundle_aliases
        >>> assert get_bundle_aliases()['prop6'] == 'period_two_bifurcations'
    """
    return {
        'prop1': 'schwarzian',
        'prop2': 'saddle_node',
        'corollary': 'fixed_point_corridor',
        'lemma': 'parameter_partials',
        'prop3': 'attractor_census',
        'prop4': 'self_twin_cycle',
        'prop5': 'symmetric_two_cycle',
        'prop6': 'period_two_bifurcations',
        'prop7': 'symmetry_breaking',
    }


BUNDLE_ALIASES = get_bundle_aliases()


def _resolve_alias(requested: str) -> str:
    """Maps `prop6.pd_at_inv_sqrt5` or `prop1.schwarzian_sign` to a registered id."""
    bundle, _, name = requested.partition('.')
    prefix = BUNDLE_ALIASES.get(bundle)
    if prefix is None:
        return requested
    if not name:
        return prefix
    if f'{prefix}.{name}' not in _REGISTRY and name.startswith(f'{prefix}_'):
        name = name[len(prefix) + 1 :]
    return f'{prefix}.{name}'


def _select(check_ids: Iterable[str] | None) -> list[str]:
    if check_ids is None:
        return list(_REGISTRY)
    selected = set()
    for requested in check_ids:
        resolved = _resolve_alias(requested)
        matches = [i for i in _REGISTRY if i == resolved or i.split('.')[0] == resolved]
        if not matches:
            raise ValueError(f'Unknown check: {requested!r}.')
        selected.update(matches)
    return [i for i in _REGISTRY if i in selected]


def _run(check_id: str, seed: int) -> VerifyResult:
    logger.info('Running check %s.', check_id)
    start = time.perf_counter()
    try:
        measurement = _REGISTRY[check_id](np.random.default_rng(seed))
        status = Status.PASS if measurement.passed() else Status.FAIL
    except Exception as exc:
        logger.error('Check %s raised %s: %s', check_id, type(exc).__name__, exc)
        measurement = Measurement(math.nan, math.nan, math.nan)
        status = Status.FAIL
    runtime_ms = round(1000 * (time.perf_counter() - start))
    logger.info('Check %s: %s in %d ms.', check_id, status.value, runtime_ms)
    return VerifyResult(
        check_id,
        float(measurement.measured),
        float(measurement.expected),
        float(measurement.tolerance),
        status,
        runtime_ms,
        measurement.relation,
    )


def verify(
    check_ids: Iterable[str] | None = None,
    seed: int = VERIFY_SETTINGS.seed,
    threads: int | None = 1,
) -> list[VerifyResult]:
    """Runs the registered checks.

    A failing or raising check never aborts the run. Each check draws its samples
    from a fresh generator seeded with `seed`, so that the results do not depend on
    the selection nor on the execution schedule.

    Arguments:
        check_ids: Check identifiers or bundle names. All the checks are run if None.
        seed: The seed of the pseudo-random generators.
        threads: The maximum number of checks run concurrently.

    Raises:
        ValueError: When an identifier matches no check.

    Returns:
        The results, in registration order.

    Example:
        >>> from offcenterlib.verification import verify
        >>> [result] = verify(['period_two_bifurcations.pd_at_inv_sqrt5'])
        >>> assert result.status == 'PASS'
    """
    selected = _select(check_ids)
    if threads == 1 or len(selected) <= 1:
        return [_run(check_id, seed) for check_id in selected]
    with ThreadPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(lambda check_id: _run(check_id, seed), selected))


def format_report(results: Iterable[VerifyResult]) -> str:
    """Returns the plain-text report, which does not include the runtimes."""
    results = list(results)
    lines = [
        '\t'.join(
            [
                result.check_id,
                result.status.value,
                format_cell(result.measured),
                format_cell(result.expected),
                format_cell(result.tolerance),
            ]
        )
        for result in results
    ]
    passed = sum(result.status is Status.PASS for result in results)
    lines.append(f'TOTAL {len(results)} PASS {passed} FAIL {len(results) - passed}')
    return '\n'.join(lines) + '\n'


def _constant(name: str) -> float:
    return next(c.value for c in bifurcation_constants() if c.name == name)


def _relative_gap(a: float, b: float) -> float:
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


def _away_from_critical_points(r: np.ndarray, x: np.ndarray, distance: float) -> np.ndarray:
    x_crit = np.arccos(np.minimum((1 + 3 * r**2) / (4 * r), 1.0))
    return (circular_distance(x, x_crit) > distance) & (circular_distance(x, -x_crit) > distance)


# Negative Schwarzian derivative


@check('schwarzian.sign')
def _schwarzian_sign(rng: np.random.Generator) -> Measurement:
    r = rng.uniform(1 / 3 + 1e-3, 0.99, 10_000)
    x = rng.uniform(-math.pi, math.pi, 10_000)
    keep = _away_from_critical_points(r, x, 1e-3)
    values = np.array([schwarzian(MapParams(ri, 0), xi) for ri, xi in zip(r[keep], x[keep])])
    return Measurement(int(np.count_nonzero(values >= 0)), 0, 0)


@check('schwarzian.closed_form')
def _schwarzian_closed_form(rng: np.random.Generator) -> Measurement:
    r = rng.uniform(1e-3, 0.99, 1000)
    x = rng.uniform(-math.pi, math.pi, 1000)
    keep = _away_from_critical_points(r, x, 1e-3) | (3 * r <= 1)
    deviation = 0.0
    for ri, xi in zip(r[keep], x[keep]):
        p = MapParams(ri, 0)
        expected = schwarzian_closed_form(p, xi)
        deviation = max(deviation, abs(schwarzian(p, xi) - expected) / max(abs(expected), 1.0))
    return Measurement(deviation, 0, 1e-9)


@check('schwarzian.h_endpoints')
def _h_endpoints(rng: np.random.Generator) -> Measurement:
    r = np.linspace(0, 0.99, 100)
    lower, upper = h_cubic(r, -1.0), h_cubic(r, 1.0)
    deviation = max(
        np.max(np.abs(lower + 2 * (1 + r) ** 3 * (1 + 3 * r))),
        np.max(np.abs(upper - 2 * (1 - r) ** 3 * (1 - 3 * r))),
    )
    return Measurement(float(deviation), 0, 1e-10)


@check('schwarzian.derivative_fd')
def _derivative_fd(rng: np.random.Generator) -> Measurement:
    step = 1e-5
    deviation = 0.0
    for r, omega, x in zip(
        rng.uniform(0, 0.95, 1000), rng.uniform(-math.pi, math.pi, 1000), rng.uniform(-math.pi, math.pi, 1000)
    ):
        p = MapParams(r, omega)
        bundle = lift_derivatives(p, x)
        below, above = lift_derivatives(p, x - step), lift_derivatives(p, x + step)
        pairs = (
            ((lift(p, x + step) - lift(p, x - step)) / (2 * step), bundle.d1),
            ((above.d1 - below.d1) / (2 * step), bundle.d2),
            ((above.d2 - below.d2) / (2 * step), bundle.d3),
        )
        for estimate, exact in pairs:
            deviation = max(deviation, abs(estimate - exact) / max(abs(exact), 1.0))
    return Measurement(deviation, 0, 1e-5)


# Saddle-node boundary of the fixed points


@check('saddle_node.grid_oracle')
def _saddle_node_grid_oracle(rng: np.random.Generator) -> Measurement:
    size = 100_000
    xs = -math.pi + (np.arange(size) + 0.5) * 2 * math.pi / size
    failures = 0
    for r in np.linspace(0.02, 0.98, 50):
        twice_iota = 2 * incident_angle(r, xs)
        boundary = saddle_node_curve(r)
        counts = []
        for omega in boundary - 0.01, boundary + 0.01:
            g = omega - twice_iota
            counts.append(int(np.count_nonzero(g * np.roll(g, -1) < 0)))
        failures += counts != [2, 0]
    return Measurement(failures, 0, 0)


@check('saddle_node.boundary_tangency')
def _saddle_node_tangency(rng: np.random.Generator) -> Measurement:
    deviation = 0.0
    for r in np.linspace(0.02, 0.98, 50):
        a = angle_a(r)
        bundle = lift_derivatives(MapParams(r, saddle_node_curve(r)), a)
        if abs(bundle.d2) < 1e-6:
            return Measurement(math.inf, 0, 1e-12)
        deviation = max(deviation, abs(bundle.d1 - 1), circular_distance(bundle.value, a))
    return Measurement(deviation, 0, 1e-12)


# Corridor of attracting fixed points


@check('fixed_point_corridor.b_r_multiplier')
def _b_r_multiplier(rng: np.random.Generator) -> Measurement:
    deviation = 0.0
    for r in np.linspace(0.51, 0.99, 50):
        b = angle_b(r)
        bundle = lift_derivatives(MapParams(r, period_doubling_fp_curve(r)), b)
        deviation = max(deviation, abs(bundle.d1 + 1), circular_distance(bundle.value, b))
    return Measurement(deviation, 0, 1e-10)


@check('fixed_point_corridor.corridor')
def _corridor(rng: np.random.Generator) -> Measurement:
    mismatches = 0
    for r in np.linspace(0.51, 0.99, 25):
        lower, upper = period_doubling_fp_curve(r), saddle_node_curve(r)
        for omega in np.linspace(-3.1, 3.1, 24):
            if min(abs(abs(omega) - lower), abs(abs(omega) - upper)) < 1e-3:
                continue
            p = MapParams(r, omega)
            numeric = any(c.stability is Stability.ATTRACTING for c in find_cycles(p, 1))
            predicted = classify_region(r, omega).region is Region.ATTRACTING_FIXED_POINT
            mismatches += numeric != predicted
    return Measurement(mismatches, 0, 0)


@check('fixed_point_corridor.degenerate_r')
def _degenerate_r(rng: np.random.Generator) -> Measurement:
    return Measurement(abs(degenerate_r() - degenerate_r_closed_form()), 0, 1e-10)


@check('fixed_point_corridor.partials_at_b_r')
def _partials_at_b_r(rng: np.random.Generator) -> Measurement:
    deviation = abs(transversality_factor(degenerate_r()))
    for r in np.linspace(0.51, 0.99, 25):
        dlift_dr, dslope_dr = lift_param_partials(MapParams(r, 0), angle_b(r))
        deviation = max(
            deviation,
            abs(dlift_dr + 2 * math.sqrt(4 * r * r - 1) / (r * math.sqrt(1 - r * r))),
            abs(dslope_dr + 6 * (1 - 2 * r * r) / (r * (1 - r * r))),
        )
    return Measurement(deviation, 0, 1e-9)


# Partial derivatives with respect to r


@check('parameter_partials.fd_consistency')
def _partials_fd(rng: np.random.Generator) -> Measurement:
    step = 1e-6
    samples = [(0.4, 0.7, 0.3)] + list(
        zip(rng.uniform(0.01, 0.9, 1000), rng.uniform(-3.1, 3.1, 1000), rng.uniform(-math.pi, math.pi, 1000))
    )
    deviation = 0.0
    for r, omega, x in samples:
        p, below, above = MapParams(r, omega), MapParams(r - step, omega), MapParams(r + step, omega)
        dlift_dr, dslope_dr = lift_param_partials(p, x)
        pairs = (
            ((lift(above, x) - lift(below, x)) / (2 * step), dlift_dr),
            ((lift_derivatives(above, x).d1 - lift_derivatives(below, x).d1) / (2 * step), dslope_dr),
            (
                (lift_iterate(above, x, 2)[1] - lift_iterate(below, x, 2)[1]) / (2 * step),
                second_iterate_multiplier_partial(p, x),
            ),
        )
        for estimate, exact in pairs:
            deviation = max(deviation, abs(estimate - exact) / max(abs(exact), 1.0))
    return Measurement(deviation, 0, 1e-5)


@check('parameter_partials.symmetric_point_reduction')
def _symmetric_point_reduction(rng: np.random.Generator) -> Measurement:
    points = []
    for r in np.linspace(0.05, 0.95, 19):
        points.extend((MapParams(r, 0), x) for x in (0.0, math.pi))
        points.extend((MapParams(r, math.pi), x) for x in two_cycle_branch(r, math.pi).points)
    for r in np.linspace(0.51, 0.99, 25):
        points.extend((MapParams(r, 0), x) for x in two_cycle_branch(r, 0).points)
    deviation = max(
        abs(second_iterate_multiplier_partial_reduced(p, x) - symmetric_point_multiplier_partial(p, x))
        for p, x in points
    )
    return Measurement(deviation, 0, 1e-10)


# Attractor census


@functools.lru_cache(maxsize=4)
def _census_sample(seed: int, size: int = 200) -> tuple[AttractorCensus, ...]:
    rng = np.random.default_rng([seed, 3])
    radii = rng.uniform(1 / 3 + 0.01, 0.99, size)
    omegas = rng.choice([0.0, math.pi], size)
    return tuple(detect_attractors(MapParams(r, omega)) for r, omega in zip(radii, omegas))


@check('attractor_census.at_most_two')
def _at_most_two(rng: np.random.Generator) -> Measurement:
    seed = int(rng.integers(2**31))
    return Measurement(max(census.multiplicity for census in _census_sample(seed)), 2, 0, 'le')


@check('attractor_census.symmetric_attracts_both')
def _symmetric_attracts_both(rng: np.random.Generator) -> Measurement:
    seed = int(rng.integers(2**31))
    violations = 0
    for census in _census_sample(seed):
        for index, cycle in enumerate(census.cycles):
            if cycle.symmetry is Symmetry.SYMMETRIC:
                violations += census.seed_cycles != (index, index)
    return Measurement(violations, 0, 0)


# The self-twin 2-cycle {0, pi}


@check('self_twin_cycle.only_at_pi')
def _self_twin_only_at_pi(rng: np.random.Generator) -> Measurement:
    omegas = [float(reduce_angle(-math.pi + 2 * math.pi * (i + 1) / 100)) for i in range(100)]
    violations = 0
    for r in 0.2, 0.5, 0.8:
        for omega in omegas:
            p = MapParams(r, omega)
            closes = circular_distance(circle_map(p, 0), math.pi) < 1e-9 and circular_distance(
                circle_map(p, math.pi), 0
            ) < 1e-9
            violations += closes != (omega == math.pi)
    return Measurement(violations, 0, 0)


@check('self_twin_cycle.unique')
def _self_twin_unique(rng: np.random.Generator) -> Measurement:
    others = 0
    for r in 0.4, 0.6:
        for omega in 0.0, math.pi:
            p = MapParams(r, omega)
            for n in range(1, 9):
                others += sum(
                    c.symmetry is Symmetry.SELF_TWIN and set_distance(c.points, (0.0, math.pi)) > 1e-7
                    for c in find_cycles(p, n)
                )
    return Measurement(others, 0, 0)


@check('self_twin_cycle.stability_threshold')
def _self_twin_threshold(rng: np.random.Generator) -> Measurement:
    mismatches = 0
    for r in np.linspace(0.01, 0.99, 99):
        if abs(r - INV_SQRT5) < 1e-3:
            continue
        stability = classify_stability(multiplier(MapParams(r, math.pi), (0.0, math.pi)))
        expected = Stability.ATTRACTING if r < INV_SQRT5 else Stability.REPELLING
        mismatches += stability is not expected
    return Measurement(mismatches, 0, 0)


# Symmetric 2-cycles


def _symmetric_two_cycles(p: MapParams) -> int:
    count = 0
    for cycle in find_cycles(p, 2):
        x = cycle.points[0]
        reflected = set_distance(cycle.points, -np.asarray(cycle.points)) < 1e-7
        count += reflected and circular_distance(circle_map(p, x), -x) < 1e-7
    return count


@check('symmetric_two_cycle.only_at_symmetric_omega')
def _symmetric_two_cycle_omegas(rng: np.random.Generator) -> Measurement:
    omegas = [float(reduce_angle(-math.pi + 2 * math.pi * (i + 1) / 24)) for i in range(24)]
    mismatches = 0
    for r in 0.4, 0.6, 0.8:
        for omega in omegas:
            expected = int(omega == math.pi or (omega == 0 and r > 0.5))
            mismatches += _symmetric_two_cycles(MapParams(r, omega)) != expected
    return Measurement(mismatches, 0, 0)


def _branch_deviation(r: float, omega: float) -> float:
    p = MapParams(r, omega)
    cycles = find_symmetric_cycles(p, 1)
    if len(cycles) != 1:
        return math.inf
    branch = two_cycle_branch(r, omega)
    return max(
        set_distance(cycles[0].points, branch.points),
        abs(cycles[0].multiplier - branch.multiplier) / branch.multiplier,
    )


@check('symmetric_two_cycle.c1_formula')
def _c1_formula(rng: np.random.Generator) -> Measurement:
    return Measurement(max(_branch_deviation(r, 0) for r in np.linspace(0.51, 0.99, 25)), 0, 1e-9)


@check('symmetric_two_cycle.c2_formula')
def _c2_formula(rng: np.random.Generator) -> Measurement:
    deviation = 0.0
    for r in np.linspace(0.05, 0.95, 19):
        y = math.cos(two_cycle_branch(r, math.pi).points[1])
        deviation = max(deviation, _branch_deviation(r, math.pi), abs(2 * r * y * y - y - r))
    return Measurement(deviation, 0, 1e-9)


@check('symmetric_two_cycle.c2_repelling')
def _c2_repelling(rng: np.random.Generator) -> Measurement:
    smallest = min(
        multiplier(MapParams(r, math.pi), two_cycle_branch(r, math.pi).points) for r in np.linspace(0.01, 0.99, 99)
    )
    return Measurement(smallest, 1, 0, 'gt')


# Period doubling and pitchfork of the 2-cycles


@check('period_two_bifurcations.pd_at_inv_sqrt5')
def _pd_at_inv_sqrt5(rng: np.random.Generator) -> Measurement:
    return Measurement(_constant('pd_2cycle'), INV_SQRT5, 1e-9)


@check('period_two_bifurcations.pf_at_inv_sqrt2')
def _pf_at_inv_sqrt2(rng: np.random.Generator) -> Measurement:
    return Measurement(_constant('pf_2cycle'), INV_SQRT2, 1e-9)


def _is_single(census: AttractorCensus, period: int, symmetry: Symmetry) -> bool:
    return (
        len(census.cycles) == 1
        and census.cycles[0].period == period
        and census.cycles[0].symmetry is symmetry
        and census.cycles[0].stability is Stability.ATTRACTING
    )


def _is_twin_pair(census: AttractorCensus, period: int) -> bool:
    if len(census.cycles) != 2:
        return False
    first, second = census.cycles
    return (
        first.period == second.period == period
        and first.symmetry is second.symmetry is Symmetry.ASYMMETRIC
        and set_distance(first.reflected(), second.points) < 1e-6
        and _relative_gap(first.multiplier, second.multiplier) <= 1e-9
    )


@check('period_two_bifurcations.pd_phenomenology')
def _pd_phenomenology(rng: np.random.Generator) -> Measurement:
    before = detect_attractors(MapParams(INV_SQRT5 - 0.02, math.pi))
    after = detect_attractors(MapParams(INV_SQRT5 + 0.02, math.pi))
    failures = (not _is_single(before, 2, Symmetry.SELF_TWIN)) + (not _is_single(after, 4, Symmetry.SYMMETRIC))
    return Measurement(failures, 0, 0)


@check('period_two_bifurcations.pf_phenomenology')
def _pf_phenomenology(rng: np.random.Generator) -> Measurement:
    before = detect_attractors(MapParams(INV_SQRT2 - 0.02, 0))
    after = detect_attractors(MapParams(INV_SQRT2 + 0.02, 0))
    repelling = two_cycle_branch(INV_SQRT2 + 0.02, 0).stability is Stability.REPELLING
    failures = (not _is_single(before, 2, Symmetry.SYMMETRIC)) + (not _is_twin_pair(after, 2)) + (not repelling)
    return Measurement(failures, 0, 0)


@check('period_two_bifurcations.f_values')
def _f_values(rng: np.random.Generator) -> Measurement:
    step = 1e-6
    deviation = abs(f_prime_at_pi(INV_SQRT5))
    for r in np.linspace(0.05, 0.95, 19):
        slope = (f_eval(r, math.pi + step) - f_eval(r, math.pi - step)) / (2 * step)
        deviation = max(
            deviation,
            abs(f_eval(r, 0) - math.pi),
            abs(f_eval(r, math.pi) - 2 * math.pi),
            abs(f_eval(r, -math.pi)),
            abs(slope - f_prime_at_pi(r)),
        )
    return Measurement(deviation, 0, 1e-6)


@check('period_two_bifurcations.pf_transversality')
def _pf_transversality(rng: np.random.Generator) -> Measurement:
    r = _constant('pf_2cycle')
    x = two_cycle_branch(r, 0).points[1]
    value = second_iterate_multiplier_partial_reduced(MapParams(r, 0), x)
    return Measurement(value, 2 * math.sqrt(2) - 8, 1e-6)


# Symmetry breaking of the 4-cycle at omega = pi


@check('symmetry_breaking.r0')
def _r0(rng: np.random.Generator) -> Measurement:
    return Measurement(_constant('pf_4cycle'), 0.57, 0.01)


def _quartic_radii() -> np.ndarray:
    return np.linspace(INV_SQRT5 + 0.005, 0.95, 20)


@check('symmetry_breaking.quartic_cross_validation')
def _quartic_cross_validation(rng: np.random.Generator) -> Measurement:
    deviation = 0.0
    for r in _quartic_radii():
        cosines = symmetric4_quartic(r, QuarticForm.ELIMINATED).accepted
        points = [x for c in find_symmetric_cycles(MapParams(r, math.pi), 2) for x in c.points]
        if not cosines or not points:
            return Measurement(math.inf, 0, 1e-6)
        angles = [sign * math.acos(y) for y in cosines for sign in (1, -1)]
        deviation = max(deviation, max(float(np.min(circular_distance(x, np.array(points)))) for x in angles))
    return Measurement(deviation, 0, 1e-6)


@check('symmetry_breaking.reference_quartic_discrepancy')
def _reference_quartic_discrepancy(rng: np.random.Generator) -> Measurement:
    accepted = 0
    for r in _quartic_radii():
        solution = symmetric4_quartic(r, QuarticForm.REFERENCE)
        logger.info(
            'Reference quartic at r=%.4f: %d real roots %s, %d validated.',
            r,
            len(solution.real_roots),
            solution.real_roots,
            len(solution.accepted),
        )
        accepted += bool(solution.accepted)
    return Measurement(accepted, 0, 0)


@check('symmetry_breaking.blaschke_vs_lift')
def _blaschke_vs_lift(rng: np.random.Generator) -> Measurement:
    r = rng.uniform(0, 0.99, 1000)
    x = rng.uniform(-math.pi, math.pi, 1000)
    deviation = max(
        circular_distance(blaschke_image(ri, xi), circle_map(MapParams(ri, math.pi), xi)) for ri, xi in zip(r, x)
    )
    return Measurement(float(deviation), 0, 1e-10)


@check('symmetry_breaking.twin_split')
def _twin_split(rng: np.random.Generator) -> Measurement:
    r0 = _constant('pf_4cycle')
    before = detect_attractors(MapParams(r0 - 0.02, math.pi))
    after = detect_attractors(MapParams(r0 + 0.02, math.pi))
    failures = (not _is_single(before, 4, Symmetry.SYMMETRIC)) + (not _is_twin_pair(after, 4))
    return Measurement(failures, 0, 0)


@check('symmetry_breaking.transversality')
def _transversality(rng: np.random.Generator) -> Measurement:
    return Measurement(abs(_constant('pf_4cycle_transversality')), 0, 0, 'gt')


# Periodic orbit search


def _random_parameters(rng: np.random.Generator, count: int = 50) -> list[MapParams]:
    radii = rng.uniform(0.01, 0.8, count)
    omegas = rng.uniform(-math.pi, math.pi, count)
    return [MapParams(r, omega) for r, omega in zip(radii, omegas)]


def _sign_change_cells(p: MapParams, n: int, size: int) -> np.ndarray:
    """Returns the left ends of the grid cells where reduce(R^n(x) - x) changes sign."""
    xs = -math.pi + 2 * math.pi * np.arange(size) / size
    images = xs
    for _ in range(n):
        images = circle_map(p, images)
    g = reduce_angle(images - xs)
    following = np.roll(g, -1)
    # Jumps of the reduction across +-pi are not roots.
    changes = (g * following < 0) & (np.abs(g - following) < math.pi)
    return xs[changes]


@check('periodic_orbits.completeness')
def _cycle_completeness(rng: np.random.Generator) -> Measurement:
    size = 100_000
    cell = 2 * math.pi / size
    misses = 0
    for p in _random_parameters(rng):
        for n in range(1, 5):
            points = np.array(
                [x for d in range(1, n + 1) if n % d == 0 for c in find_cycles(p, d) for x in c.points]
            )
            for left in _sign_change_cells(p, n, size):
                if points.size == 0:
                    misses += 1
                    continue
                center = left + cell / 2
                misses += bool(np.min(circular_distance(points, center)) > cell / 2 + 1e-6)
    return Measurement(misses, 0, 0)


@check('periodic_orbits.symmetric_consistency')
def _symmetric_consistency(rng: np.random.Generator) -> Measurement:
    misses = 0
    for r in np.linspace(0.35, 0.95, 10):
        for omega in 0.0, math.pi:
            p = MapParams(r, omega)
            for m in 1, 2:
                full = find_cycles(p, 2 * m)
                for cycle in find_symmetric_cycles(p, m):
                    distances = [set_distance(cycle.points, other.points) for other in full]
                    misses += not distances or min(distances) >= 1e-8
    return Measurement(misses, 0, 0)


@check('periodic_orbits.multiplier_base_point')
def _multiplier_base_point(rng: np.random.Generator) -> Measurement:
    deviation = 0.0
    for p in _random_parameters(rng, 20):
        for n in range(1, 5):
            for cycle in find_cycles(p, n):
                scale = max(abs(cycle.multiplier), 1.0)
                for x in cycle.points:
                    deviation = max(deviation, abs(lift_iterate(p, x, n)[1] - cycle.multiplier) / scale)
    return Measurement(deviation, 0, 1e-9)


@check('periodic_orbits.twin_multipliers')
def _twin_multipliers(rng: np.random.Generator) -> Measurement:
    failures = 0
    for r in np.linspace(0.35, 0.95, 13):
        for omega in 0.0, math.pi:
            p = MapParams(r, omega)
            for n in range(1, 5):
                cycles = find_cycles(p, n)
                for cycle in cycles:
                    if cycle.symmetry is not Symmetry.ASYMMETRIC:
                        continue
                    twins = [c for c in cycles if set_distance(cycle.reflected(), c.points) < 1e-8]
                    failures += len(twins) != 1 or _relative_gap(twins[0].multiplier, cycle.multiplier) > 1e-9
    return Measurement(failures, 0, 0)
