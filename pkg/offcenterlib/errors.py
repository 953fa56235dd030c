"""Exception and warning types raised by the offcenterlib library."""
from __future__ import annotations

__all__ = [
    'ConvergenceError',
    'DomainError',
    'ResolutionWarning',
    'SingularPointError',
]


class DomainError(ValueError):
    """A parameter lies outside the interval on which the quantity is defined."""


class SingularPointError(DomainError):
    """The quantity has a pole at the requested point, e.g. at a critical point."""


class ConvergenceError(RuntimeError):
    """A numerical solve did not converge or could not be bracketed."""


class ResolutionWarning(UserWarning):
    """Distinct roots were found closer to each other than one grid cell."""
