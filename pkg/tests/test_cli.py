from __future__ import annotations

import math
from io import StringIO
from pathlib import Path

import pytest
from pytest_mock import MockerFixture

from offcenterlib.cli import main
from offcenterlib.csvio import read_csv
from offcenterlib.verification import Status, VerifyResult


def run(capsys: pytest.CaptureFixture[str], *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_iterate_lift(capsys: pytest.CaptureFixture[str]) -> None:
    code, out, _ = run(capsys, 'iterate', '--r', '0', '--omega', '1.0', '--x0', '0', '--steps', '3', '--lift')
    assert code == 0
    assert out == 'step,x\n0,0.0\n1,1.0\n2,2.0\n3,3.0\n'


def test_iterate_pi_literal(capsys: pytest.CaptureFixture[str]) -> None:
    code, out, _ = run(capsys, 'iterate', '--r', '0.3', '--omega', 'pi', '--steps', '1')
    assert code == 0
    assert out.splitlines()[2] == f'1,{math.pi!r}'


def test_cycles(capsys: pytest.CaptureFixture[str]) -> None:
    code, out, _ = run(capsys, 'cycles', '--r', '0.6', '--omega', '0', '--period', '2', '--symmetric')
    assert code == 0
    header, rows = read_csv(StringIO(out))
    assert header == ['cycle_id', 'period', 'point_index', 'x', 'multiplier', 'stability', 'symmetry']
    assert [row[:3] for row in rows] == [[0, 2, 0], [0, 2, 1]]
    assert rows[0][6] == 'symmetric'


def test_cycles_odd_symmetric_period(capsys: pytest.CaptureFixture[str]) -> None:
    code, _, err = run(capsys, 'cycles', '--r', '0.6', '--omega', '0', '--period', '3', '--symmetric')
    assert code == 1
    assert 'even period' in err


def test_diagram_out(capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
    path = tmp_path / 'diagram.csv'
    argv = ['diagram', '--omega', 'pi/4', '--r-min', '0.4', '--r-max', '0.5', '--r-steps', '2']
    code, out, _ = run(capsys, *argv, '--transient', '5', '--samples', '3', '--out', str(path))
    assert code == 0
    assert out == ''
    header, rows = read_csv(path)
    assert header == ['r', 'omega', 'seed_id', 'sample_index', 'x']
    assert len(rows) == 2 * 2 * 3


def test_diagram_domain_error(capsys: pytest.CaptureFixture[str]) -> None:
    argv = ['diagram', '--omega', '0', '--r-min', '0.2', '--r-max', '0.5', '--r-steps', '2']
    code, out, err = run(capsys, *argv)
    assert code == 1
    assert 'r > 1/3' in err


def test_curves(capsys: pytest.CaptureFixture[str]) -> None:
    code, out, _ = run(capsys, 'curves', '--which', 'c2', '--r-min', '0.1', '--r-max', '0.9', '--steps', '3')
    assert code == 0
    header, rows = read_csv(StringIO(out))
    assert header == ['curve_id', 'branch', 'r', 'omega', 'x']
    assert [row[1] for row in rows] == ['+', '-'] * 3


def test_regions(capsys: pytest.CaptureFixture[str]) -> None:
    code, out, _ = run(capsys, 'regions', '--r-steps', '2', '--omega-steps', '3', '--threads', '2')
    assert code == 0
    _, rows = read_csv(StringIO(out))
    assert len(rows) == 6
    assert rows[0][2] == 'invertible'


def test_constants(capsys: pytest.CaptureFixture[str]) -> None:
    code, out, _ = run(capsys, 'constants')
    assert code == 0
    header, rows = read_csv(StringIO(out))
    assert header == ['name', 'value', 'residual']
    assert rows[0][0] == 'pd_2cycle'
    assert rows[0][1] == pytest.approx(1 / math.sqrt(5), abs=1e-9)
    assert rows[-1][0] == 'pf_4cycle_transversality'


def test_graph(capsys: pytest.CaptureFixture[str]) -> None:
    code, out, _ = run(capsys, 'graph', '--r', '0.56', '--omega', 'pi', '--points', '5', '--iterates', '4,8')
    assert code == 0
    _, rows = read_csv(StringIO(out))
    assert [row[1] for row in rows] == [4] * 5 + [8] * 5


@pytest.mark.parametrize('status, expected_code', [(Status.PASS, 0), (Status.FAIL, 1)])
def test_verify(
    capsys: pytest.CaptureFixture[str], mocker: MockerFixture, status: Status, expected_code: int
) -> None:
    result = VerifyResult('schwarzian.sign', 0.0, 0.0, 0.0, status, 12)
    mocked = mocker.patch('offcenterlib.cli.verify', return_value=[result])
    code, out, _ = run(capsys, 'verify', '--only', 'schwarzian.sign,saddle_node', '--seed', '0x2a')
    assert code == expected_code
    mocked.assert_called_once_with(['schwarzian.sign', 'saddle_node'], seed=42, threads=None)
    lines = out.splitlines()
    assert lines[0] == f'schwarzian.sign\t{status.value}\t0.0\t0.0\t0.0'
    assert lines[1] == f'TOTAL 1 PASS {int(status is Status.PASS)} FAIL {int(status is Status.FAIL)}'


def test_verify_numbered_bundle(capsys: pytest.CaptureFixture[str]) -> None:
    code, out, _ = run(capsys, 'verify', '--only', 'prop6.pd_at_inv_sqrt5')
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith('period_two_bifurcations.pd_at_inv_sqrt5\tPASS\t')
    assert lines[1] == 'TOTAL 1 PASS 1 FAIL 0'


def test_verify_unknown_check(capsys: pytest.CaptureFixture[str]) -> None:
    code, _, err = run(capsys, 'verify', '--only', 'prop9')
    assert code == 1
    assert 'Unknown check' in err


@pytest.mark.parametrize(
    'argv',
    [
        ['iterate', '--r', '0.3', '--omega', '0', '--steps', '1', '--unknown'],
        ['curves', '--which', 'hopf'],
        ['regions'],
        [],
    ],
)
def test_usage_error(capsys: pytest.CaptureFixture[str], argv: list[str]) -> None:
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert 'usage:' in err


@pytest.mark.parametrize(
    'argv, message',
    [
        (['iterate', '--r', '1.2', '--omega', '0', '--steps', '1'], '0 <= r < 1'),
        (['iterate', '--r', '0.3', '--omega', '4', '--steps', '1'], '-pi < omega <= pi'),
        (['iterate', '--r', '0.3', '--omega', 'tau', '--steps', '1'], 'Unknown angle'),
        (['iterate', '--r', '0.3', '--omega', '0', '--steps', '-1'], 'must be at least 0'),
    ],
)
def test_domain_error(capsys: pytest.CaptureFixture[str], argv: list[str], message: str) -> None:
    code, out, err = run(capsys, *argv)
    assert code == 1
    assert out == ''
    assert message in err
