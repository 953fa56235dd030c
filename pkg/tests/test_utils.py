from __future__ import annotations

import math
from typing import Any

import numpy as np
import pytest

from offcenterlib.errors import DomainError
from offcenterlib.utils import ascount, asradius, set_distance


@pytest.mark.parametrize('value, expected_radius', [(0, 0.0), (0.5, 0.5), (np.float32(0.25), 0.25), (0.999, 0.999)])
def test_asradius(value: Any, expected_radius: float) -> None:
    actual_radius = asradius(value)
    assert actual_radius == expected_radius
    assert type(actual_radius) is float


@pytest.mark.parametrize('value', [True, '0.5', None])
def test_asradius_invalid_type(value: Any) -> None:
    with pytest.raises(TypeError, match='Invalid radius of type'):
        asradius(value)


@pytest.mark.parametrize('value', [-0.1, 1, 1.2, math.nan])
def test_asradius_invalid_value(value: float) -> None:
    with pytest.raises(DomainError, match='The radius must satisfy 0 <= r < 1'):
        asradius(value)


def test_ascount() -> None:
    assert ascount(np.int64(3), 'period', minimum=1) == 3


def test_ascount_invalid() -> None:
    with pytest.raises(TypeError, match='Invalid period of type'):
        ascount(2.0, 'period')
    with pytest.raises(DomainError, match='The period must be at least 1: 0'):
        ascount(0, 'period', minimum=1)


@pytest.mark.parametrize(
    'points, other_points, expected_distance',
    [
        ([], [], 0),
        ([0.0], [], math.inf),
        ([0.1, 1.0], [1.0, 0.1], 0),
        ([math.pi - 0.01], [-math.pi + 0.01], 0.02),
        ([0.0, 1.0], [0.0], 1.0),
    ],
)
def test_set_distance(points: list[float], other_points: list[float], expected_distance: float) -> None:
    assert set_distance(points, other_points) == pytest.approx(expected_distance, abs=1e-14)
