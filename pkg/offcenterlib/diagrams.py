"""Parameter sweeps: orbit diagrams, region scans and iterate graphs.

The sweeps are vectorized over the radii of a chunk of columns, and the chunks are
distributed over a thread pool. Results are assembled in ascending column order,
so that the output does not depend on the number of threads.
"""
from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Iterable, NamedTuple, Sequence

import numpy as np
from numpy.typing import NDArray

from .angles import TWO_PI, reduce_angle
from .bifurcations import RegionClass, classify_region
from .config import ORBIT_SETTINGS
from .errors import DomainError
from .maps import MapParams, circle_step, lift_iterate
from .utils import ascount, asradius

__all__ = [
    'DiagramRow',
    'GraphRow',
    'SEED_IDS',
    'iterate_graph',
    'orbit_diagram',
    'region_scan',
]

logger = logging.getLogger(__name__)

CHUNK_SIZE = 32

# Lexicographic order, so that rows sort by (r, seed_id, sample_index).
SEED_IDS = ('crit_minus', 'crit_plus')


class DiagramRow(NamedTuple):
    """One sample of the asymptotic orbit of a critical point."""

    r: float
    omega: float
    seed_id: str
    sample_index: int
    x: float


class GraphRow(NamedTuple):
    """One sample of the graph of an iterate of the map."""

    x: float
    iterate: int
    value: float


def _chunks(values: NDArray[np.float64], size: int = CHUNK_SIZE) -> list[NDArray[np.float64]]:
    return [values[start : start + size] for start in range(0, values.size, size)]


def _run_chunks(function: Callable[[Any], Any], chunks: Sequence[Any], threads: int | None) -> list[Any]:
    if threads == 1 or len(chunks) <= 1:
        return [function(chunk) for chunk in chunks]
    with ThreadPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(function, chunks))


def _diagram_chunk(
    radii: NDArray[np.float64], omega: float, transient: int, samples: int
) -> NDArray[np.float64]:
    """Returns the samples of shape (samples, radii, 2) of the critical orbits."""
    x_plus = np.arccos(np.minimum((1 + 3 * radii**2) / (4 * radii), 1.0))
    x = np.stack([-x_plus, x_plus], axis=-1)
    r = radii[:, None]
    for _ in range(transient):
        x = reduce_angle(circle_step(r, omega, x))
    orbit = np.empty((samples,) + x.shape)
    for index in range(samples):
        x = reduce_angle(circle_step(r, omega, x))
        orbit[index] = x
    logger.debug('Computed the orbit diagram for r in [%r, %r].', radii[0], radii[-1])
    return orbit


def orbit_diagram(
    omega: float,
    r_min: float,
    r_max: float,
    r_steps: int,
    transient: int = ORBIT_SETTINGS.transient,
    samples: int = ORBIT_SETTINGS.samples,
    threads: int | None = None,
) -> list[DiagramRow]:
    """Returns the asymptotic orbits of both critical points, for uniformly spaced radii.

    Arguments:
        omega: The rotation angle, in (-pi, pi].
        r_min: The smallest radius, greater than 1/3.
        r_max: The largest radius.
        r_steps: The number of radii.
        transient: The number of discarded iterations.
        samples: The number of recorded iterations.
        threads: The maximum number of worker threads.

    Raises:
        DomainError: When the radius interval is not inside (1/3, 1).

    Returns:
        The rows, sorted by (r, seed_id, sample_index).
    """
    omega = MapParams(0, omega).omega
    r_min, r_max = asradius(r_min), asradius(r_max)
    if 3 * r_min <= 1:
        raise DomainError(f'The critical points exist only for r > 1/3: r_min = {r_min}')
    if r_min > r_max:
        raise DomainError(f'The radius interval is empty: [{r_min}, {r_max}]')
    r_steps = ascount(r_steps, 'number of radii', minimum=1)
    transient = ascount(transient, 'transient')
    samples = ascount(samples, 'number of samples', minimum=1)

    radii = np.linspace(r_min, r_max, r_steps)
    chunks = _chunks(radii)
    orbits = _run_chunks(lambda chunk: _diagram_chunk(chunk, omega, transient, samples), chunks, threads)

    rows = []
    for chunk, orbit in zip(chunks, orbits):
        for column, r in enumerate(chunk):
            for seed_index, seed_id in enumerate(SEED_IDS):
                rows.extend(
                    DiagramRow(float(r), omega, seed_id, index, float(x))
                    for index, x in enumerate(orbit[:, column, seed_index])
                )
    return rows


def region_scan(r_steps: int, omega_steps: int, threads: int | None = None) -> list[RegionClass]:
    """Classifies the points of a uniform grid of the parameter plane [0, 1) x (-pi, pi].

    The grid radii are j / r_steps, for j = 0, ..., r_steps - 1, and the rotation
    angles are -pi + 2 pi (i + 1) / omega_steps, for i = 0, ..., omega_steps - 1.

    Returns:
        The classes in row-major order: radius first, then rotation angle.
    """
    r_steps = ascount(r_steps, 'number of radii', minimum=1)
    omega_steps = ascount(omega_steps, 'number of rotation angles', minimum=1)
    radii = np.arange(r_steps) / r_steps
    omegas = [float(reduce_angle(-math.pi + TWO_PI * (i + 1) / omega_steps)) for i in range(omega_steps)]

    def classify_row(r: float) -> list[RegionClass]:
        return [classify_region(float(r), omega) for omega in omegas]

    rows = _run_chunks(classify_row, list(radii), threads)
    return [region for row in rows for region in row]


def iterate_graph(p: MapParams, iterates: Iterable[int] = (4, 8), points: int = 1000) -> list[GraphRow]:
    """Samples the graphs of iterates of the map on a uniform grid of (-pi, pi).

    Arguments:
        p: The map parameters.
        iterates: The iterate orders.
        points: The number of grid points.

    Returns:
        The rows, sorted by iterate order then by x.
    """
    points = ascount(points, 'number of points', minimum=1)
    xs = -math.pi + (np.arange(points) + 0.5) * TWO_PI / points
    rows = []
    for n in iterates:
        n = ascount(n, 'iterate order', minimum=1)
        values = reduce_angle(lift_iterate(p, xs, n)[0])
        rows.extend(GraphRow(float(x), n, float(value)) for x, value in zip(xs, values))
    return rows
