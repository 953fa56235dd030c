"""Miscellaneous offcenterlib helpers."""
from __future__ import annotations

import math
from typing import Any

import numpy as np
from numpy.typing import ArrayLike

from .angles import circular_distance
from .errors import DomainError

__all__ = ['ascount', 'asradius', 'set_distance']


def asradius(value: Any) -> float:
    """Returns the radius of the light source as a float, after validation.

    Arguments:
        value: The distance between the light source and the center of the circle.

    Raises:
        TypeError: When the input is not a real number.
        DomainError: When the radius does not satisfy 0 <= r < 1.

    Returns:
        The radius, as a float.

    Example:
        >>> from offcenterlib.utils import asradius
        >>> assert asradius(0.5) == 0.5
    """
    if not isinstance(value, (int, float, np.number)) or isinstance(value, bool):
        raise TypeError(f'Invalid radius of type {type(value).__name__!r}: {value}')
    radius = float(value)
    if not 0 <= radius < 1:
        raise DomainError(f'The radius must satisfy 0 <= r < 1: {value}')
    return radius


def ascount(value: Any, name: str, minimum: int = 0) -> int:
    """Returns a validated integer count.

    Arguments:
        value: The count.
        name: The name of the count, used in the error message.
        minimum: The smallest valid value.

    Raises:
        TypeError: When the input is not an integer.
        DomainError: When the count is less than the minimum.
    """
    if not isinstance(value, (int, np.integer)) or isinstance(value, bool):
        raise TypeError(f'Invalid {name} of type {type(value).__name__!r}: {value}')
    if value < minimum:
        raise DomainError(f'The {name} must be at least {minimum}: {value}')
    return int(value)


def set_distance(points: ArrayLike, other_points: ArrayLike) -> float:
    """Returns the circular Hausdorff distance between two finite sets of angles.

    Arguments:
        points: The first set of angles.
        other_points: The second set of angles.

    Returns:
        The largest distance from a point of one set to the closest point of the
        other set. It is infinite if exactly one of the sets is empty.
    """
    a = np.atleast_1d(np.asarray(points, dtype=float))
    b = np.atleast_1d(np.asarray(other_points, dtype=float))
    if a.size == 0 and b.size == 0:
        return 0.0
    if a.size == 0 or b.size == 0:
        return math.inf
    distances = circular_distance(a[:, None], b[None, :])
    return float(max(distances.min(axis=1).max(), distances.min(axis=0).max()))
