import io
from collections import OrderedDict

import pytest

import pcmmisc.miscutils as miscutils
import pcmmisc.misctime as misctime


@pytest.mark.parametrize('env, level, expected', [
    ({}, 0, True),
    ({}, 1, False),
    ({'ENGINE_DEBUG': '3'}, 3, True),
    ({'ENGINE_DEBUG': '3'}, 4, False),
    ({'PCM_DEBUG': '0', 'ENGINE_DEBUG': '9'}, 1, False),
    ({'PCM_DEBUG': 'x'}, 0, False),
])
def test_fwdebug_check(monkeypatch, env, level, expected):
    for name, val in env.items():
        monkeypatch.setenv(name, val)
    assert miscutils.fwdebug_check(level, 'ENGINE_DEBUG') is expected


def test_fwdebug_check_prefix(monkeypatch):
    monkeypatch.setenv('ENGINE_DEBUG', '5')
    assert miscutils.fwdebug_check(5, 'ENGINE_EVENTS')
    assert not miscutils.fwdebug_check(6, 'ENGINE_EVENTS')


def test_fwdebug_print_goes_to_stderr(capsys):
    miscutils.fwdebug_print("hello", "PRE ")
    out, err = capsys.readouterr()
    assert out == ''
    assert err.startswith('PRE ')
    assert err.rstrip().endswith('hello')


def test_fwdie(capsys):
    with pytest.raises(SystemExit) as exc:
        miscutils.fwdie("bad thing", 3)
    assert exc.value.code == 3
    assert 'bad thing' in capsys.readouterr().err


def test_fwsplit():
    assert miscutils.fwsplit('1,2,4') == ['1', '2', '4']
    assert miscutils.fwsplit('(1, 2, 4:6)') == ['1', '2', '4', '5', '6']
    assert miscutils.fwsplit('a;b', ';') == ['a', 'b']


@pytest.mark.parametrize('val, expected', [
    (None, False), (True, True), (0, False), (2, True),
    ('yes', True), ('Off', False), ('1', True), ('0', False),
])
def test_convert_bool(val, expected):
    assert miscutils.convertBool(val) is expected


def test_convert_bool_errors():
    with pytest.raises(ValueError):
        miscutils.convertBool('maybe')
    with pytest.raises(TypeError):
        miscutils.convertBool(1.5)


def test_update_ordered_dict():
    base = OrderedDict([('a', OrderedDict([('x', 1), ('y', 2)])), ('b', 3)])
    miscutils.updateOrderedDict(base, {'a': {'y': 5, 'z': 6}, 'c': 7})
    assert base == {'a': {'x': 1, 'y': 5, 'z': 6}, 'b': 3, 'c': 7}
    with pytest.raises(TypeError):
        miscutils.updateOrderedDict(base, {'b': {'q': 1}})


def test_coremakedirs(tmp_path):
    target = tmp_path / 'a' / 'b'
    miscutils.coremakedirs(str(target))
    miscutils.coremakedirs(str(target))
    assert target.is_dir()


def test_pretty_print_dict():
    buf = io.StringIO()
    miscutils.pretty_print_dict({'b': 1, 'a': {'c': 2}}, buf, sortit=True)
    lines = buf.getvalue().splitlines()
    assert lines[0].startswith('a')
    assert any('c' in line and '2' in line for line in lines)


def test_report_timestamp_fixed():
    assert misctime.report_timestamp('2024-05-01 12:00:00') == '2024-05-01T12:00:00+00:00'
    assert misctime.report_timestamp('2024-05-01T14:00:00+02:00') == '2024-05-01T12:00:00+00:00'


def test_report_timestamp_now():
    stamp = misctime.report_timestamp()
    assert stamp.endswith('+00:00')
    assert '.' not in stamp
