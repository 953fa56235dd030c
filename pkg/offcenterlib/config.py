"""Default numerical settings.

The library functions take keyword arguments whose defaults are read from the
frozen settings instances below, and the command-line interface overrides them
with flags.
"""
from __future__ import annotations

from dataclasses import dataclass

__all__ = ['ORBIT_SETTINGS', 'OrbitSettings', 'VERIFY_SETTINGS', 'VerifySettings']


@dataclass(frozen=True)
class OrbitSettings:
    """Settings of the orbit iteration and periodic-orbit searches.

    Attributes:
        transient: Number of discarded iterates before sampling an orbit.
        samples: Number of recorded iterates after the transient.
        max_period: Largest period looked for by the attractor detection.
        convergence_tol: Circular distance below which two consecutive period
            blocks of an orbit are considered equal.
        dedup_tol: Circular distance below which two cycle points are merged.
        closure_tol: Circular distance allowed between a cycle point and its
            image after a full period.
        neutral_band: Half-width of the band around 1 in which the absolute value
            of a multiplier is classified as neutral.
        grid: Number of grid points per unit period used to bracket roots.
        bisect_width: Bracket width at which bisection hands over to Newton.
        newton_maxiter: Maximum number of Newton iterations.
        residual_tol: Target absolute residual of a refined root.
    """

    transient: int = 10_000
    samples: int = 200
    max_period: int = 64
    convergence_tol: float = 1e-9
    dedup_tol: float = 1e-8
    closure_tol: float = 1e-9
    neutral_band: float = 1e-8
    grid: int = 1024
    bisect_width: float = 1e-8
    newton_maxiter: int = 100
    residual_tol: float = 1e-12


@dataclass(frozen=True)
class VerifySettings:
    """Settings of the verification harness.

    Attributes:
        seed: Seed of the pseudo-random generator used by the sampling checks.
    """

    seed: int = 0x0FF5E7


ORBIT_SETTINGS = OrbitSettings()
VERIFY_SETTINGS = VerifySettings()
