import json

import pytest

from pentaglobe.cli import EXIT_OK, EXIT_OUTPUT, EXIT_USAGE, run
from pentaglobe.verification import (SKIPPED, VerificationReport, check_oracle_equivalence,
                                     load_expected, sampled_oracle, verify_all)
from pentaglobe.common import Settings


def test_neighborhoods_text(capsys):
    assert run(['neighborhoods', '--pattern', 'a4b', '--format', 'text']) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == '18 tilings'
    assert len(lines) == 19
    assert any('forced vertices: B1 B3' in line for line in lines)


def test_neighborhoods_json(capsys):
    assert run(['neighborhoods', '--pattern', 'a3b2', '--format', 'json']) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert sorted(entry["type"] for entry in data) == ["I", "II", "III"]


def test_neighborhoods_svg(tmp_path):
    out = tmp_path / 'svg'
    assert run(['neighborhoods', '--pattern', 'a3bc', '--format', 'svg',
                '--out', str(out)]) == EXIT_OK
    assert sorted(p.name for p in out.iterdir()) == ['a3bc_I.svg', 'a3bc_II.svg']


def test_families_json(capsys):
    assert run(['families', '--distance', '3', '--pattern', 'a3b2', '--format', 'json']) == EXIT_OK
    records = json.loads(capsys.readouterr().out)
    assert len(records) == 4
    assert all(rec['distance'] == 3 for rec in records)


def test_families_dot(capsys):
    assert run(['families', '--distance', '2', '--pattern', 'a4b', '--format', 'dot']) == EXIT_OK
    text = capsys.readouterr().out
    assert text.startswith('digraph')
    assert 'tiling#' in text


def test_timezones_text(capsys):
    assert run(['timezones', '--distance', '1', '--pattern', 'a4b', '--up-to-symmetry']) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == '125 tilings, 2 signature pairs'
    assert lines[1].startswith('a -> a  100')


def test_propagation_json(tmp_path):
    out = tmp_path / 'table.json'
    assert run(['propagation', '--pattern', 'a3bc', '--format', 'json',
                '--out', str(out)]) == EXIT_OK
    data = json.loads(out.read_text())
    assert data['I']['P3'] == 'x'


def test_closed_enum(capsys):
    assert run(['closed-enum', '--distance', '3', '--timezones', '2', '--pattern', 'a5']) == EXIT_OK
    assert capsys.readouterr().out == '1 tilings, 1 up to symmetry\n'


def test_render(tmp_path):
    out = tmp_path / 'type18.svg'
    assert run(['render', '--pattern', 'a4b', '--out', str(out), '18']) == EXIT_OK
    assert out.read_text().count('id="edge') == 20


@pytest.mark.parametrize("argv", [
    ['neighborhoods', '--pattern', 'a6'],
    ['families', '--distance', '7', '--pattern', 'a4b'],
    ['closed-enum', '--distance', '5', '--timezones', '3', '--pattern', 'a4b'],
    ['render', '--pattern', 'a4b', '--out', 'x.svg', '19'],
    ['bogus'],
    [],
])
def test_usage_errors(argv, capsys):
    assert run(argv) == EXIT_USAGE


def test_unwritable_output(tmp_path, capsys):
    out = tmp_path / 'missing' / 'table.json'
    assert run(['propagation', '--pattern', 'a5', '--format', 'json',
                '--out', str(out)]) == EXIT_OUTPUT
    assert 'error' in capsys.readouterr().err


def test_output_is_deterministic(capsys):
    run(['families', '--distance', '2', '--pattern', 'a3b2', '--format', 'dot'])
    first = capsys.readouterr().out
    run(['families', '--distance', '2', '--pattern', 'a3b2', '--format', 'dot'])
    assert capsys.readouterr().out == first


def test_verification_report():
    rows = [
        {'check': 'x', 'reference': 'r', 'expected': 1, 'computed': 1, 'passed': True,
         'elapsed': 0.0, 'skipped': False},
        {'check': 'y', 'reference': 'r', 'expected': None, 'computed': 'skipped',
         'passed': False, 'elapsed': 0.0, 'skipped': True},
    ]
    report = VerificationReport(rows)
    assert report.passed
    assert report.failures == []
    assert report.summary().splitlines()[-1] == '1 passed, 0 failed, 1 skipped'
    rows.append(dict(rows[0], check='z', computed=2, passed=False))
    report = VerificationReport(rows)
    assert not report.passed
    assert list(report.df.columns) == VerificationReport.columns


def test_verify_neighborhood_counts():
    report = verify_all(Settings(threads=2), checks=['neighborhood counts', 'orbit bookkeeping'])
    assert report.passed, report.failures
    assert report.rows[0]['check'] == 'neighborhoods[a5]'


@pytest.mark.parametrize("d, n, size", [(1, 2, 50), (3, 2, 20), (5, 4, 20)])
def test_sampled_oracle_a4b(d, n, size):
    assert sampled_oracle(d, n, 'a4b', size) == 0


@pytest.mark.slow
def test_oracle_rows_never_skipped():
    rows = check_oracle_equivalence(load_expected(), Settings(max_closed=0, oracle_sample=5))
    assert all(computed != SKIPPED for _, _, computed in rows)
    assert all(computed == exp for _, exp, computed in rows)
