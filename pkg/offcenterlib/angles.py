"""This module handles angles on the circle.

Angles are represented by radians. The principal range is the half-open
interval (-pi, pi], so that `reduce_angle(-pi) == pi`.
"""
from __future__ import annotations

import math
from typing import Mapping, Union

import numpy as np
from numpy.typing import NDArray

__all__ = [
    'ANGLE_LITERALS',
    'Real',
    'TWO_PI',
    'asomega',
    'circular_distance',
    'get_angle_literals',
    'reduce_angle',
]

Real = Union[float, NDArray[np.float64]]

TWO_PI = 2 * math.pi


def get_angle_literals() -> Mapping[str, float]:
    """Returns the named angles accepted in place of a numerical rotation angle.

    The names are the rotation angles of the symmetric maps, `0` and `pi`, and the
    fractions `pi/2` and `pi/4`, with their opposites.

    Examples:
        >>> from offcenterlib.angles import get_angle_literals
        >>> literals = get_angle_literals()
        >>> print(literals['pi'], literals['-pi/4'])

    """
    fractions = {'pi': 1, 'pi/2': 2, 'pi/4': 4}
    literals = {'0': 0.0}
    for name, denominator in fractions.items():
        literals[name] = math.pi / denominator
        if denominator != 1:
            literals[f'-{name}'] = -math.pi / denominator
    # -pi is not in the principal range, it is the same angle as pi.
    literals['-pi'] = math.pi
    return literals


ANGLE_LITERALS = get_angle_literals()


def asomega(value: float | str) -> float:
    """Returns the rotation angle associated to a literal or the input angle otherwise.

    Arguments:
        value: A named angle such as `'pi'` or `'pi/2'`, or the angle in radians.

    Raises:
        TypeError: When the input is neither a string nor a real number.
        ValueError: When the input is a string that is neither a known literal
            nor a decimal number.

    Returns:
        The angle in radians. Numerical inputs are returned as floats, without
        range reduction.

    Example:
        >>> import math
        >>> from offcenterlib.angles import asomega
        >>> assert asomega('pi') == math.pi
        >>> assert asomega(1.5) == 1.5
    """
    if isinstance(value, (int, float, np.number)) and not isinstance(value, bool):
        return float(value)

    if not isinstance(value, str):
        raise TypeError(f'Invalid angle of type {type(value).__name__!r}: {value}')

    key = value.strip().lower()
    try:
        return ANGLE_LITERALS[key]
    except KeyError:
        pass
    try:
        return float(key)
    except ValueError:
        raise ValueError(f'Unknown angle: {value!r}.') from None


def reduce_angle(x: Real) -> Real:
    """Reduces angles to the principal range (-pi, pi].

    Arguments:
        x: The angle or array of angles, in radians.

    Returns:
        The angles modulo 2 pi, in (-pi, pi]. Scalar inputs return floats.

    Example:
        >>> import math
        >>> from offcenterlib.angles import reduce_angle
        >>> assert reduce_angle(-math.pi) == math.pi
        >>> assert reduce_angle(3 * math.pi) == math.pi
    """
    if np.ndim(x) == 0:
        reduced = math.pi - (math.pi - float(x)) % TWO_PI
        return math.pi if reduced <= -math.pi else reduced
    array = np.asarray(x, dtype=float)
    reduced_array = math.pi - np.mod(math.pi - array, TWO_PI)
    return np.where(reduced_array <= -math.pi, math.pi, reduced_array)


def circular_distance(x: Real, y: Real) -> Real:
    """Returns the distance between angles, measured along the unit circle.

    Arguments:
        x: The first angle(s).
        y: The second angle(s).

    Returns:
        The distance, in [0, pi].
    """
    return np.abs(reduce_angle(np.subtract(x, y)))
