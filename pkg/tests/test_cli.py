import json

import pytest

from comet import cli

SMALL = """schema_version = 1

<trace>
    count = 200
</trace>

<sim>
    nproc = 1
</sim>
"""


@pytest.fixture
def small_config(tmp_path):
    path = tmp_path / 'small.wcl'
    path.write_text(SMALL)
    return str(path)


def run_json(capsys, argv):
    assert cli.run(argv) == 0
    return json.loads(capsys.readouterr().out)


def test_map_row_col(capsys):
    doc = run_json(capsys, ['map', '--row', '1000', '--col', '100'])
    assert doc['mapped']['subarray_id'] == 1
    assert doc['mapped']['subarray_row'] == 488
    assert doc['mapped']['subarray_col'] == 100
    assert doc['report_schema_version'] == 1


def test_map_address_text(capsys):
    assert cli.run(['map', '--addr', '0x80', '--text']) == 0
    out = capsys.readouterr().out
    assert 'bank' in out and 'subarray_row' in out


def test_map_needs_an_address(capsys):
    assert cli.run(['map', '--row', '3']) == 2
    assert 'cometsim: error' in capsys.readouterr().err


def test_simulate_is_deterministic(tmp_path, small_config):
    outs = [str(tmp_path / name) for name in ('a.json', 'b.json')]
    for out in outs:
        assert cli.run(['simulate', '--config', small_config, '--out', out]) == 0
    with open(outs[0], 'rb') as first, open(outs[1], 'rb') as second:
        assert first.read() == second.read()
    with open(outs[0]) as infh:
        doc = json.load(infh)
    assert doc['stats']['requests'] == 200
    assert 'timestamp' not in doc


def test_simulate_timestamp_and_csv(capsys, small_config):
    doc = run_json(capsys, ['simulate', '--config', small_config, '--arch', 'cosmos',
                            '--timestamp', '2026-01-02T03:04:05'])
    assert doc['arch'] == 'cosmos'
    assert doc['timestamp'] == '2026-01-02T03:04:05+00:00'
    assert cli.run(['simulate', '--config', small_config, '--format', 'csv']) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith('arch,requests,reads')
    assert len(lines) == 2


def test_gen_trace_then_simulate(tmp_path, capsys, small_config):
    trace = str(tmp_path / 'stream.trace')
    assert cli.run(['gen-trace', '--config', small_config, '--out', trace]) == 0
    with open(trace) as infh:
        lines = infh.read().splitlines()
    assert len(lines) == 200
    assert lines[:2] == ['0 R 0x0', '0 R 0x80']
    doc = run_json(capsys, ['simulate', '--trace', trace])
    assert doc['stats']['reads'] == 200


def test_power(capsys):
    doc = run_json(capsys, ['power'])
    assert doc['power']['total_w'] == pytest.approx(23.4, abs=0.1)
    cosmos = run_json(capsys, ['power', '--arch', 'cosmos'])
    assert doc['power']['total_w'] / cosmos['power']['total_w'] < 0.5


def test_lut_csv(capsys):
    assert cli.run(['lut', '--bits', '2', '--format', 'csv']) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == 'index,gain_db'
    assert len(lines) == 13


def test_lut_follows_configured_interval(tmp_path, capsys):
    path = tmp_path / 'lut60.wcl'
    path.write_text("schema_version = 1\n<lut>\n    soa_interval = 60\n</lut>\n")
    doc = run_json(capsys, ['lut', '--config', str(path)])
    assert doc['plan']['soa_interval_rows'] == 60
    assert doc['plan']['lut_entries'] == 60
    assert doc['plan']['failing_rows'] == 0


def test_corrupt_demo(capsys):
    doc = run_json(capsys, ['corrupt-demo', '--steps', '2'])
    assert [s['step'] for s in doc['steps']] == [0, 1, 2]
    assert all(s['isolated_corrupted'] == 0 for s in doc['steps'])


def test_sweep(capsys, small_config):
    assert cli.run(['sweep-b', '--config', small_config, '--format', 'csv']) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith('bits_per_cell,')
    assert [line.split(',')[0] for line in lines[1:]] == ['1', '2', '4']


@pytest.mark.parametrize('argv', [[], ['frobnicate'], ['simulate', '--format', 'xml']])
def test_usage_errors(argv, capsys):
    assert cli.run(argv) == 2


def test_missing_files(tmp_path, capsys):
    assert cli.run(['simulate', '--trace', str(tmp_path / 'none.trace')]) == 3
    assert cli.run(['simulate', '--config', str(tmp_path / 'none.wcl')]) == 3


def test_bad_config(tmp_path, capsys):
    path = tmp_path / 'bad.wcl'
    path.write_text('schema_version = 1\n<geometry>\n    bits_per_cell = 3\n</geometry>\n')
    assert cli.run(['simulate', '--config', str(path)]) == 1
    assert 'bits_per_cell' in capsys.readouterr().err


def test_bad_trace(tmp_path, capsys):
    path = tmp_path / 'bad.trace'
    path.write_text('0 R 0x0\n1 Q 0x80\n')
    assert cli.run(['simulate', '--trace', str(path)]) == 1
    assert 'line 2' in capsys.readouterr().err
