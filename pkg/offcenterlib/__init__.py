"""The offcenterlib library.

This library computes the dynamics of the off-center reflection circle maps
R(x) = x + omega - 2 iota_r(x): map kernels and derivatives, periodic orbits and
their symmetry, bifurcation curves and constants, and orbit diagrams.
"""
from .angles import asomega, reduce_angle
from .bifurcations import bifurcation_constants, classify_region, sample_curve
from .errors import ConvergenceError, DomainError, ResolutionWarning, SingularPointError
from .maps import MapParams, circle_map, lift, lift_derivatives
from .orbits import CycleRecord, detect_attractors, find_cycles, find_symmetric_cycles
from .verification import verify

__all__ = [
    'ConvergenceError',
    'CycleRecord',
    'DomainError',
    'MapParams',
    'ResolutionWarning',
    'SingularPointError',
    'asomega',
    'bifurcation_constants',
    'circle_map',
    'classify_region',
    'detect_attractors',
    'find_cycles',
    'find_symmetric_cycles',
    'lift',
    'lift_derivatives',
    'reduce_angle',
    'sample_curve',
    'verify',
]
