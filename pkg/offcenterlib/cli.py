"""Command-line interface of offcenterlib.

Data is written as CSV to the standard output or to the file given by `--out`,
and log messages go to the standard error. The exit code is 0 on success, 1 when
an argument violates a domain invariant or when a verification check fails, and 2
on usage errors.

Example:
    $ offcenter constants
    $ offcenter diagram --omega pi --r-min 0.35 --r-max 0.95 --r-steps 600 --out pi.csv
"""
from __future__ import annotations

import argparse
import logging
import sys
from typing import Callable, Sequence, TextIO

from .angles import asomega
from .bifurcations import CURVE_IDS, DEFAULT_CURVE_STEPS, bifurcation_constants, sample_curve
from .config import ORBIT_SETTINGS, VERIFY_SETTINGS
from .csvio import (
    CONSTANTS_HEADER,
    CURVE_HEADER,
    CYCLE_HEADER,
    DIAGRAM_HEADER,
    GRAPH_HEADER,
    REGION_HEADER,
    TRAJECTORY_HEADER,
    constant_rows,
    cycle_rows,
    region_rows,
    trajectory_rows,
    write_csv,
)
from .diagrams import iterate_graph, orbit_diagram, region_scan
from .errors import DomainError
from .maps import MapParams
from .orbits import find_cycles, find_symmetric_cycles, iterate
from .verification import Status, format_report, verify

__all__ = ['build_parser', 'main']

logger = logging.getLogger(__name__)

Handler = Callable[[argparse.Namespace, TextIO], int]


def _csv_list(value: str) -> list[str]:
    return [item.strip() for item in value.split(',') if item.strip()]


def _params(args: argparse.Namespace) -> MapParams:
    return MapParams(args.r, asomega(args.omega))


def _iterate(args: argparse.Namespace, out: TextIO) -> int:
    orbit = iterate(_params(args), asomega(args.x0), args.steps, lift=args.lift)
    write_csv(out, TRAJECTORY_HEADER, trajectory_rows(orbit))
    return 0


def _cycles(args: argparse.Namespace, out: TextIO) -> int:
    p = _params(args)
    if args.symmetric:
        if args.period % 2:
            raise DomainError(f'Symmetric cycles have an even period: {args.period}')
        cycles = find_symmetric_cycles(p, args.period // 2, grid=args.grid)
    else:
        cycles = find_cycles(p, args.period, grid=args.grid)
    write_csv(out, CYCLE_HEADER, cycle_rows(cycles))
    return 0


def _diagram(args: argparse.Namespace, out: TextIO) -> int:
    rows = orbit_diagram(
        asomega(args.omega),
        args.r_min,
        args.r_max,
        args.r_steps,
        transient=args.transient,
        samples=args.samples,
        threads=args.threads,
    )
    write_csv(out, DIAGRAM_HEADER, rows)
    return 0


def _curves(args: argparse.Namespace, out: TextIO) -> int:
    write_csv(out, CURVE_HEADER, sample_curve(args.which, args.r_min, args.r_max, args.steps))
    return 0


def _regions(args: argparse.Namespace, out: TextIO) -> int:
    write_csv(out, REGION_HEADER, region_rows(region_scan(args.r_steps, args.omega_steps, threads=args.threads)))
    return 0


def _constants(args: argparse.Namespace, out: TextIO) -> int:
    constants = bifurcation_constants()
    for constant in constants:
        if not constant.converged:
            logger.warning('The constant %s did not converge: %s', constant.name, constant.error)
    write_csv(out, CONSTANTS_HEADER, constant_rows(constants))
    return 0


def _verify(args: argparse.Namespace, out: TextIO) -> int:
    results = verify(args.only, seed=args.seed, threads=args.threads)
    out.write(format_report(results))
    return int(any(result.status is Status.FAIL for result in results))


def _graph(args: argparse.Namespace, out: TextIO) -> int:
    iterates = [int(n) for n in args.iterates]
    write_csv(out, GRAPH_HEADER, iterate_graph(_params(args), iterates, args.points))
    return 0


def _add_map_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--r', type=float, required=True, help='off-center radius, in [0, 1)')
    parser.add_argument('--omega', required=True, help="rotation angle in radians, or a literal such as 'pi'")


def build_parser() -> argparse.ArgumentParser:
    """Returns the argument parser of the `offcenter` command."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-v', '--verbose', action='count', default=0, help='-v for INFO, -vv for DEBUG logs')
    common.add_argument('--threads', type=int, default=None, help='maximum number of worker threads')
    common.add_argument('--out', default=None, help='output file, instead of the standard output')

    parser = argparse.ArgumentParser(prog='offcenter', description='Dynamics of the off-center reflection map.')
    subparsers = parser.add_subparsers(dest='command', required=True)

    command = subparsers.add_parser('iterate', parents=[common], help='orbit of an angle')
    _add_map_arguments(command)
    command.add_argument('--x0', default='0', help='initial angle')
    command.add_argument('--steps', type=int, required=True, help='number of iterations')
    command.add_argument('--lift', action='store_true', help='do not reduce the iterates')
    command.set_defaults(handler=_iterate)

    command = subparsers.add_parser('cycles', parents=[common], help='periodic orbits of a given period')
    _add_map_arguments(command)
    command.add_argument('--period', type=int, required=True)
    command.add_argument('--grid', type=int, default=ORBIT_SETTINGS.grid, help='grid cells per unit period')
    command.add_argument('--symmetric', action='store_true', help='only the symmetric cycles, omega in {0, pi}')
    command.set_defaults(handler=_cycles)

    command = subparsers.add_parser('diagram', parents=[common], help='orbit diagram of the critical points')
    command.add_argument('--omega', required=True)
    command.add_argument('--r-min', type=float, required=True)
    command.add_argument('--r-max', type=float, required=True)
    command.add_argument('--r-steps', type=int, required=True)
    command.add_argument('--transient', type=int, default=ORBIT_SETTINGS.transient)
    command.add_argument('--samples', type=int, default=ORBIT_SETTINGS.samples)
    command.set_defaults(handler=_diagram)

    command = subparsers.add_parser('curves', parents=[common], help='bifurcation curves')
    command.add_argument('--which', choices=CURVE_IDS, required=True)
    command.add_argument('--r-min', type=float, default=0.0)
    command.add_argument('--r-max', type=float, default=0.99)
    command.add_argument('--steps', type=int, default=DEFAULT_CURVE_STEPS)
    command.set_defaults(handler=_curves)

    command = subparsers.add_parser('regions', parents=[common], help='classification of a parameter grid')
    command.add_argument('--r-steps', type=int, required=True)
    command.add_argument('--omega-steps', type=int, required=True)
    command.set_defaults(handler=_regions)

    command = subparsers.add_parser('constants', parents=[common], help='bifurcation constants')
    command.set_defaults(handler=_constants)

    command = subparsers.add_parser('verify', parents=[common], help='re-verify the dynamical properties')
    command.add_argument('--only', type=_csv_list, default=None, help='comma-separated check ids or bundles')
    command.add_argument('--seed', type=lambda value: int(value, 0), default=VERIFY_SETTINGS.seed)
    command.set_defaults(handler=_verify)

    command = subparsers.add_parser('graph', parents=[common], help='graphs of iterates of the map')
    _add_map_arguments(command)
    command.add_argument('--points', type=int, default=1000)
    command.add_argument('--iterates', type=_csv_list, default=['4', '8'], help='comma-separated orders')
    command.set_defaults(handler=_graph)

    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format='%(levelname)s %(name)s: %(message)s')


def main(argv: Sequence[str] | None = None) -> int:
    """Runs the `offcenter` command and returns its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    _configure_logging(args.verbose)

    handler: Handler = args.handler
    try:
        if args.out is None:
            return handler(args, sys.stdout)
        with open(args.out, 'w', newline='', encoding='utf-8') as out:
            return handler(args, out)
    except (DomainError, TypeError, ValueError) as exc:
        print(f'offcenter {args.command}: {exc}', file=sys.stderr)
        return 1
    except RuntimeError as exc:
        logger.error('%s', exc)
        return 1


if __name__ == '__main__':
    sys.exit(main())
