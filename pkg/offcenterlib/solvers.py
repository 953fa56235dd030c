"""One-dimensional root refinement.

The periodic-orbit searches bracket the roots of a scalar function on a grid,
then refine every bracket with `refine_root`. The bifurcation constants are
solved on a known bracket with `solve_bracketed`.
"""
from __future__ import annotations

import logging
import math
from typing import Callable

import numpy as np
from numpy.typing import NDArray
from scipy import optimize

from .config import ORBIT_SETTINGS
from .errors import ConvergenceError

__all__ = ['find_brackets', 'refine_root', 'solve_bracketed']

logger = logging.getLogger(__name__)

ScalarFunction = Callable[[float], float]


def find_brackets(values: NDArray[np.float64]) -> tuple[NDArray[np.int_], NDArray[np.int_]]:
    """Locates the zeros and the sign changes of sampled function values.

    Arguments:
        values: The function values on consecutive grid points.

    Returns:
        The indices of the grid points at which the function vanishes, and the
        indices i such that the function changes sign strictly between the grid
        points i and i + 1.
    """
    values = np.asarray(values, dtype=float)
    exact = np.flatnonzero(values == 0)
    changes = np.flatnonzero(values[:-1] * values[1:] < 0)
    return exact, changes


def refine_root(
    func: ScalarFunction,
    fprime: ScalarFunction,
    lower: float,
    upper: float,
    *,
    bisect_width: float = ORBIT_SETTINGS.bisect_width,
    maxiter: int = ORBIT_SETTINGS.newton_maxiter,
    residual_tol: float = ORBIT_SETTINGS.residual_tol,
) -> float:
    """Returns the root of a function inside a bracket.

    The bracket is first reduced by bisection, then the root is polished by Newton
    iterations. When Newton does not converge or leaves the bracket, the root is
    obtained by bisection only.

    Arguments:
        func: The function, which changes sign on [lower, upper].
        fprime: The derivative of the function.
        lower: The lower bound of the bracket.
        upper: The upper bound of the bracket.
        bisect_width: The bracket width at which Newton takes over.
        maxiter: The maximum number of Newton iterations.
        residual_tol: The target absolute value of the function at the root.

    Raises:
        ConvergenceError: When the function does not change sign on the bracket.
    """
    try:
        start = optimize.bisect(func, lower, upper, xtol=bisect_width)
    except ValueError as exc:
        raise ConvergenceError(f'Invalid bracket [{lower}, {upper}]: {exc}') from None

    root, result = optimize.newton(
        func, start, fprime=fprime, maxiter=maxiter, full_output=True, disp=False
    )
    if not result.converged or not lower <= root <= upper or not math.isfinite(root):
        logger.debug(
            'Newton did not converge from %r in [%r, %r] (%s), using bisection.',
            start,
            lower,
            upper,
            result.flag,
        )
        root = optimize.bisect(func, lower, upper, xtol=4 * np.finfo(float).eps)
    else:
        logger.debug('Newton converged to %r after %d iterations.', root, result.iterations)

    residual = abs(func(root))
    if residual > residual_tol:
        logger.warning('Root %r has residual %.3g above the target %.3g.', root, residual, residual_tol)
    return float(root)


def solve_bracketed(
    func: ScalarFunction, lower: float, upper: float, *, xtol: float = 1e-13, name: str = 'root'
) -> float:
    """Solves func(x) = 0 on a bracket with Brent's method.

    Arguments:
        func: The function, which must change sign on [lower, upper].
        lower: The lower bound of the bracket.
        upper: The upper bound of the bracket.
        xtol: The absolute tolerance on the root.
        name: The name of the solved quantity, used in messages.

    Raises:
        ConvergenceError: When the bracket is invalid or the solver does not converge.
    """
    try:
        root, result = optimize.brentq(func, lower, upper, xtol=xtol, full_output=True)
    except (ValueError, RuntimeError) as exc:
        raise ConvergenceError(f'Cannot solve for {name} in [{lower}, {upper}]: {exc}') from None
    if not result.converged:
        raise ConvergenceError(f'Cannot solve for {name} in [{lower}, {upper}]: {result.flag}')
    logger.debug('Solved %s = %r in %d iterations.', name, root, result.iterations)
    return float(root)
