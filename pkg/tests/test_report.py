import io
import json
from collections import OrderedDict

import numpy as np
import pytest

from comet import geometry as geo
from comet import integrity
from comet import report
from comet.engine import SimStats, TraceRequest, simulate_comet


def test_plain_values():
    doc = {'a': 0.1 + 0.2, 'b': np.int64(3), 'c': (1, 2.5), 'd': np.array([0.5]), 'e': np.bool_(True),
           'f': geo.PhysicalAddress(channel=0, row_id=1, bank=2, column_id=3)}
    out = json.loads(report.dumps_json(doc))
    assert out['a'] == 0.3
    assert out['b'] == 3
    assert out['c'] == [1, 2.5]
    assert out['d'] == [0.5]
    assert out['e'] is True
    assert out['f']['row_id'] == 1


def test_json_is_sorted():
    text = report.dumps_json(OrderedDict([('z', 1), ('a', 2)]))
    assert text.index('"a"') < text.index('"z"')
    assert text.endswith('}\n')


def test_stamp():
    doc = report.stamp({'x': 1})
    assert doc['report_schema_version'] == 1
    assert 'timestamp' not in doc
    fixed = report.stamp({'x': 1}, '2026-01-02T03:04:05')
    assert fixed['timestamp'] == '2026-01-02T03:04:05+00:00'
    assert 'timestamp' in report.stamp({}, True)


def test_csv_power_rows():
    stack = OrderedDict([('laser_w', 7.4), ('soa_w', 15.9), ('tuning_shift_nm', 1.0), ('total_w', 23.3)])
    rows, names = report.power_rows(stack)
    assert [row['component'] for row in rows] == ['laser_w', 'soa_w', 'total_w']
    buf = io.StringIO()
    report.write_csv(rows, names, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == 'component,watts'
    assert lines[1] == 'laser_w,7.4'


def test_lut_rows():
    rows, names = report.lut_rows(integrity.build_gain_lut(2))
    assert names == ['index', 'gain_db']
    assert len(rows) == 12
    assert rows[0]['gain_db'] == pytest.approx(1.4)


def test_stats_rows_and_document(comet4b, timing, table4b, optics):
    stats = simulate_comet([TraceRequest(0.0, 'R', 0)], comet4b, timing, table4b, optics, timeline_ns=100.0)
    rows, names = report.stats_rows([stats])
    assert names == list(SimStats().as_dict().keys())
    assert rows[0]['latency_avg_ns'] == pytest.approx(221.0)
    doc = report.stats_document(stats)
    assert doc['arch'] == 'comet'
    assert len(doc['power_timeline_w']) == 3


def test_emit_to_file(tmp_path):
    out = str(tmp_path / 'r.json')
    report.emit({'value': 1.0}, None, 'json', out)
    with open(out) as infh:
        assert json.load(infh) == {'report_schema_version': 1, 'value': 1.0}


def test_emit_csv_to_stdout(capsys):
    report.emit(None, ([{'a': 1, 'b': 0.25}], ['a', 'b']), 'csv')
    assert capsys.readouterr().out.splitlines() == ['a,b', '1,0.25']
