"""CSV serialization of trajectories, cycles, curves, region scans and diagrams.

Floats are written with their shortest round-trip representation, so that reading
a file and writing it back reproduces it byte for byte. Lines end with LF and a
header row is always present.
"""
from __future__ import annotations

import csv
from contextlib import contextmanager
from enum import Enum
from pathlib import Path
from typing import Any, Iterable, Iterator, Sequence, TextIO

import numpy as np

from .bifurcations import BifurcationConstant, CurveSample, RegionClass
from .diagrams import DiagramRow, GraphRow
from .orbits import CycleRecord

__all__ = [
    'CONSTANTS_HEADER',
    'CURVE_HEADER',
    'CYCLE_HEADER',
    'DIAGRAM_HEADER',
    'GRAPH_HEADER',
    'REGION_HEADER',
    'TRAJECTORY_HEADER',
    'constant_rows',
    'cycle_rows',
    'format_cell',
    'parse_cell',
    'read_csv',
    'region_rows',
    'trajectory_rows',
    'write_csv',
]

TRAJECTORY_HEADER = ('step', 'x')
CYCLE_HEADER = ('cycle_id', 'period', 'point_index', 'x', 'multiplier', 'stability', 'symmetry')
DIAGRAM_HEADER = DiagramRow._fields
CURVE_HEADER = CurveSample._fields
REGION_HEADER = ('r', 'omega', 'class')
CONSTANTS_HEADER = ('name', 'value', 'residual')
GRAPH_HEADER = GraphRow._fields

Row = Sequence[Any]


def format_cell(value: Any) -> str:
    """Returns the CSV text of a cell.

    Example:
        >>> from offcenterlib.csvio import format_cell
        >>> assert format_cell(0.1) == '0.1'
        >>> assert format_cell(None) == ''
    """
    if value is None:
        return ''
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def parse_cell(text: str) -> int | float | str:
    """Returns the value of a cell: an integer, a float, or the text itself."""
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


@contextmanager
def _open_text(file: str | Path | TextIO, mode: str) -> Iterator[TextIO]:
    if isinstance(file, (str, Path)):
        with open(file, mode, newline='', encoding='utf-8') as f:
            yield f
    else:
        yield file


def write_csv(file: str | Path | TextIO, header: Sequence[str], rows: Iterable[Row]) -> None:
    """Writes a header and rows as CSV.

    Arguments:
        file: The output file name or text stream.
        header: The column names.
        rows: The rows, whose cells are formatted by `format_cell`.
    """
    with _open_text(file, 'w') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(header)
        writer.writerows([format_cell(cell) for cell in row] for row in rows)


def read_csv(file: str | Path | TextIO) -> tuple[list[str], list[list[int | float | str]]]:
    """Reads a CSV file written by `write_csv`.

    Returns:
        The header and the rows, whose cells are parsed by `parse_cell`.
    """
    with _open_text(file, 'r') as f:
        reader = csv.reader(f)
        header = next(reader)
        rows = [[parse_cell(cell) for cell in row] for row in reader]
    return header, rows


def trajectory_rows(orbit: Iterable[float]) -> list[Row]:
    return [(step, x) for step, x in enumerate(orbit)]


def cycle_rows(cycles: Iterable[CycleRecord]) -> list[Row]:
    """Returns one row per cycle point, the cycles being numbered from 0."""
    return [
        (cycle_id, cycle.period, index, x, cycle.multiplier, cycle.stability, cycle.symmetry)
        for cycle_id, cycle in enumerate(cycles)
        for index, x in enumerate(cycle.points)
    ]


def region_rows(regions: Iterable[RegionClass]) -> list[Row]:
    return [(region.r, region.omega, region.region) for region in regions]


def constant_rows(constants: Iterable[BifurcationConstant]) -> list[Row]:
    return [(constant.name, constant.value, constant.residual) for constant in constants]
