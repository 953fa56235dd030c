from __future__ import annotations

import math

import numpy as np
import pytest

from offcenterlib.angles import circular_distance
from offcenterlib.bifurcations import (
    CURVE_IDS,
    QuarticForm,
    Region,
    angle_a,
    angle_b,
    bifurcation_constants,
    bifurcation_points,
    classify_region,
    degenerate_r,
    degenerate_r_closed_form,
    f_eval,
    f_prime_at_pi,
    f_zeros,
    period_doubling_fp_curve,
    quartic_coefficients,
    saddle_node_curve,
    sample_curve,
    symmetric4_point,
    symmetric4_quartic,
    transversality_factor,
    two_cycle_branch,
)
from offcenterlib.errors import ConvergenceError, DomainError
from offcenterlib.maps import MapParams, circle_map, lift, lift_derivatives
from offcenterlib.orbits import Stability, Symmetry, find_symmetric_cycles, iterate, multiplier
from offcenterlib.utils import set_distance

INV_SQRT5 = 1 / math.sqrt(5)
INV_SQRT2 = 1 / math.sqrt(2)


@pytest.mark.parametrize('r', [0.1, 0.5, 0.9])
def test_saddle_node_curve(r: float) -> None:
    a = angle_a(r)
    bundle = lift_derivatives(MapParams(r, saddle_node_curve(r)), a)
    assert bundle.d1 == pytest.approx(1)
    assert circular_distance(bundle.value, a) < 1e-12
    assert saddle_node_curve(r) == pytest.approx(math.pi - 2 * math.acos(r))


def test_saddle_node_curve_rotation() -> None:
    assert saddle_node_curve(0) == 0


@pytest.mark.parametrize('r', [0.55, 0.7, 0.95])
def test_period_doubling_fp_curve(r: float) -> None:
    b = angle_b(r)
    assert 0 < b < angle_a(r)
    bundle = lift_derivatives(MapParams(r, period_doubling_fp_curve(r)), b)
    assert bundle.d1 == pytest.approx(-1)
    assert circular_distance(bundle.value, b) < 1e-12


def test_period_doubling_fp_curve_value() -> None:
    assert period_doubling_fp_curve(0.6) == pytest.approx(0.786020, abs=1e-6)


def test_angle_b_invalid() -> None:
    with pytest.raises(DomainError, match='1/2 <= r < 1'):
        angle_b(0.4)
    with pytest.raises(DomainError, match='1/2 < r < 1'):
        period_doubling_fp_curve(0.5)


def test_degenerate_r() -> None:
    r = degenerate_r()
    assert r == pytest.approx(degenerate_r_closed_form(), abs=1e-10)
    assert r == pytest.approx(0.5119, abs=1e-4)
    assert transversality_factor(r) == pytest.approx(0, abs=1e-9)


@pytest.mark.parametrize('r, omega', [(0.6, 0), (0.9, 0), (0.1, math.pi), (0.5, math.pi), (0.9, math.pi)])
def test_two_cycle_branch(r: float, omega: float) -> None:
    p = MapParams(r, omega)
    cycle = two_cycle_branch(r, omega)
    minus, plus = cycle.points
    assert minus == -plus
    assert circular_distance(circle_map(p, plus), minus) < 1e-12
    assert cycle.multiplier == pytest.approx(multiplier(p, cycle.points))
    assert cycle.symmetry is Symmetry.SYMMETRIC


def test_two_cycle_branch_stability() -> None:
    assert two_cycle_branch(INV_SQRT2 - 0.01, 0).stability is Stability.ATTRACTING
    assert two_cycle_branch(INV_SQRT2 + 0.01, 0).stability is Stability.REPELLING
    assert two_cycle_branch(0.3, math.pi).stability is Stability.REPELLING


def test_two_cycle_branch_invalid() -> None:
    with pytest.raises(DomainError, match='exists only for r > 1/2'):
        two_cycle_branch(0.5, 0)
    with pytest.raises(DomainError, match='tabulated only'):
        two_cycle_branch(0.6, 1.0)


@pytest.mark.parametrize('r', [0.2, 0.6, 0.9])
def test_f_eval(r: float) -> None:
    assert f_eval(r, 0) == pytest.approx(math.pi)
    assert f_eval(r, math.pi) == pytest.approx(2 * math.pi)
    assert f_eval(r, -math.pi) == pytest.approx(0, abs=1e-12)
    x = np.linspace(-3, 3, 13)
    p = MapParams(r, math.pi)
    twice_f = lift(p, lift(p, x)) + x
    np.testing.assert_allclose(twice_f, 2 * f_eval(r, x), atol=1e-12)


@pytest.mark.parametrize('r', [0.2, INV_SQRT5, 0.7])
def test_f_prime_at_pi(r: float) -> None:
    step = 1e-6
    estimate = (f_eval(r, math.pi + step) - f_eval(r, math.pi - step)) / (2 * step)
    assert f_prime_at_pi(r) == pytest.approx(estimate, abs=1e-7)


def test_f_prime_at_pi_vanishes() -> None:
    assert f_prime_at_pi(INV_SQRT5) == pytest.approx(0, abs=1e-15)


def test_f_zeros() -> None:
    r = 0.6
    zeros = f_zeros(r)
    points = [x for cycle in find_symmetric_cycles(MapParams(r, math.pi), 2) for x in cycle.points]
    assert set_distance(zeros, [0.0, math.pi] + points) < 1e-9


def test_f_zeros_before_period_doubling() -> None:
    assert set_distance(f_zeros(0.4), [0.0, math.pi]) < 1e-12


def test_quartic_coefficients() -> None:
    assert quartic_coefficients(0.5) == (-1.9375, 1.875, 1.25, -3.0, 1.0)
    assert quartic_coefficients(0.5, QuarticForm.ELIMINATED) == (-1.9375, 2.75, 1.25, -3.0, 1.0)


@pytest.mark.parametrize('r', [0.5, 0.6, 0.7])
def test_symmetric4_quartic_eliminated(r: float) -> None:
    solution = symmetric4_quartic(r, QuarticForm.ELIMINATED)
    assert len(solution.roots) == 4
    assert len(solution.accepted) >= 1
    p = MapParams(r, math.pi)
    for y in solution.accepted:
        x = math.acos(y)
        assert circular_distance(iterate(p, x, 2)[-1], -x) < 1e-6


def test_symmetric4_quartic_reference_rejected() -> None:
    solution = symmetric4_quartic(0.5)
    assert solution.accepted == ()
    assert solution.rejected == solution.real_roots


def test_symmetric4_quartic_invalid() -> None:
    with pytest.raises(DomainError, match='degenerate for r = 0'):
        symmetric4_quartic(0)


@pytest.mark.parametrize('r', [0.5, 0.56, 0.6])
def test_symmetric4_point(r: float) -> None:
    x0 = symmetric4_point(r)
    assert math.pi / 2 < x0 < math.pi
    p = MapParams(r, math.pi)
    assert circular_distance(iterate(p, x0, 2)[-1], -x0) < 1e-9


def test_symmetric4_point_before_period_doubling() -> None:
    with pytest.raises(ConvergenceError, match='No symmetric 4-cycle'):
        symmetric4_point(0.4)


def test_bifurcation_constants() -> None:
    constants = {c.name: c for c in bifurcation_constants()}
    assert list(constants) == ['pd_2cycle', 'pf_2cycle', 'pf_4cycle', 'degenerate', 'pf_4cycle_transversality']
    assert all(c.converged for c in constants.values())
    assert constants['pd_2cycle'].value == pytest.approx(INV_SQRT5, abs=1e-9)
    assert constants['pf_2cycle'].value == pytest.approx(INV_SQRT2, abs=1e-9)
    assert constants['pf_4cycle'].value == pytest.approx(0.57, abs=0.01)
    assert constants['degenerate'].value == pytest.approx(degenerate_r_closed_form(), abs=1e-10)
    assert constants['pd_2cycle'].residual < 1e-9
    assert constants['pf_4cycle_transversality'].value != 0


@pytest.mark.parametrize(
    'r, omega, expected_region',
    [
        (0.2, 1.0, Region.INVERTIBLE),
        (1 / 3, 3.0, Region.INVERTIBLE),
        (0.4, 0.0, Region.ATTRACTING_FIXED_POINT),
        (0.4, 3.0, Region.NO_FIXED_POINT),
        (0.6, 1.0, Region.ATTRACTING_FIXED_POINT),
        (0.6, -1.0, Region.ATTRACTING_FIXED_POINT),
        (0.6, 0.5, Region.REPELLING_OR_SADDLE),
        (0.6, 3.0, Region.NO_FIXED_POINT),
        (0.6, math.pi, Region.NO_FIXED_POINT),
    ],
)
def test_classify_region(r: float, omega: float, expected_region: Region) -> None:
    region = classify_region(r, omega)
    assert region.region is expected_region
    assert (region.r, region.omega) == (r, omega)


@pytest.mark.parametrize('which', ['saddle-node', 'period-doubling', 'c1', 'c2'])
def test_sample_curve(which: str) -> None:
    samples = sample_curve(which, 0, 0.9, 10)
    assert len(samples) % 2 == 0
    for plus, minus in zip(samples[::2], samples[1::2]):
        assert (plus.branch, minus.branch) == ('+', '-')
        assert plus.r == minus.r
        assert minus.x == -plus.x
        assert circular_distance(minus.omega, -plus.omega) < 1e-12


def test_sample_curve_skips_invalid_radii() -> None:
    samples = sample_curve('period-doubling', 0, 0.9, 4)
    assert {s.curve_id for s in samples} == {'period_doubling_fp'}
    assert [s.r for s in samples] == pytest.approx([0.6, 0.6, 0.9, 0.9])


def test_sample_curve_invalid() -> None:
    with pytest.raises(ValueError, match='Unknown curve'):
        sample_curve('hopf', 0, 0.9)
    with pytest.raises(DomainError, match='The radius interval is empty'):
        sample_curve('c2', 0.9, 0.1)


def test_bifurcation_points() -> None:
    points = bifurcation_points()
    assert [p.curve_id for p in points] == ['period_doubling_2cycle', 'pitchfork_2cycle', 'pitchfork_4cycle']
    assert sample_curve('bifurcation-points', 0, 0.9) == points
    assert 'bifurcation-points' in CURVE_IDS
