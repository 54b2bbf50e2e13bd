import json
import os

import pytest

from pcmconfig import cfgdefs
from pcmconfig.runconfig import RunConfig
from comet import cometdefs
from comet.exceptions import ConfigSchemaError


def _config_file(tmp_path, body, version=cfgdefs.SCHEMA_VERSION):
    doc = dict(body)
    if version is not None:
        doc['schema_version'] = version
    path = tmp_path / 'run.json'
    path.write_text(json.dumps(doc))
    return str(path)


def _schema_path(tmp_path, body, **args):
    with pytest.raises(ConfigSchemaError) as exc:
        RunConfig(dict(args, config=_config_file(tmp_path, body)))
    return exc.value.path


def test_shipped_defaults_match_schema(etc_dir):
    with open(os.path.join(etc_dir, 'comet_default.json')) as infh:
        shipped = json.load(infh)
    assert shipped == cfgdefs.default_config()


def test_shipped_defaults_load(etc_dir):
    config = RunConfig({'config': os.path.join(etc_dir, 'comet_default.json')})
    assert config.geometry() == RunConfig().geometry()


def test_defaults(comet4b):
    config = RunConfig()
    assert config.geometry() == comet4b
    assert config.line_bytes() == 128
    assert config.value('sim.arch') == cometdefs.ARCH_COMET
    assert config.timing().policy == cometdefs.POLICY_OPEN
    assert config.lut().size == 46
    assert config.level_table().size == 16
    assert config.trace_spec().footprint_bytes is None
    assert config.crossbar().bits_per_cell == 2


def test_family_capacity():
    family = RunConfig().family()
    assert list(family) == [1, 2, 4]
    assert all(g.capacity_bits == 2 ** 33 for g in family.values())


def test_cli_overrides_file(tmp_path):
    path = _config_file(tmp_path, {'sim': {'arch': 'cosmos'}, 'trace': {'seed': 3}})
    config = RunConfig({'config': path, 'seed': 11, 'policy': 'closed'})
    assert config.value('sim.arch') == cometdefs.ARCH_COSMOS
    assert config.value('trace.seed') == 11
    assert config.timing().policy == cometdefs.POLICY_CLOSED


def test_wcl_example(etc_dir):
    config = RunConfig({'config': os.path.join(etc_dir, 'comet_1b.wcl')})
    g = config.geometry()
    assert (g.bits_per_cell, g.subarray_cols) == (1, 1024)
    assert g.capacity_bits == 2 ** 33
    assert config.trace_spec().seed == 42
    assert config.trace_spec().read_fraction == pytest.approx(0.7)
    assert config.timing().policy == cometdefs.POLICY_CLOSED


def test_missing_schema_version(tmp_path):
    path = _config_file(tmp_path, {'sim': {'arch': 'comet'}}, version=None)
    with pytest.raises(ConfigSchemaError) as exc:
        RunConfig({'config': path})
    assert exc.value.path == 'schema_version'


def test_wrong_schema_version(tmp_path):
    path = _config_file(tmp_path, {}, version=2)
    with pytest.raises(ConfigSchemaError) as exc:
        RunConfig({'config': path})
    assert exc.value.path == 'schema_version'


@pytest.mark.parametrize('body, path', [
    ({'dram': {'banks': 1}}, 'dram'),
    ({'geometry': {'rows': 1}}, 'geometry.rows'),
    ({'geometry': {'banks': 'four'}}, 'geometry.banks'),
    ({'geometry': {'banks': 3}}, 'geometry.banks'),
    ({'geometry': {'subarray_count': 8}}, 'geometry.subarray_count'),
    ({'geometry': {'bits_per_cell': 3}}, 'geometry.bits_per_cell'),
    ({'geometry': {'line_bytes': 96}}, 'geometry.line_bytes'),
    ({'timing': {'policy': 'half-open'}}, 'timing.policy'),
    ({'timing': {'read_ns': -1}}, 'timing.read_ns'),
    ({'losses': {'coupling_db': -0.5}}, 'losses.coupling_db'),
    ({'power': {'wall_plug_efficiency': 0}}, 'power.wall_plug_efficiency'),
    ({'levels': {'reset_mode': 'partial'}}, 'levels.reset_mode'),
    ({'cosmos': {'levels': [0.99, 0.9, 0.8]}}, 'cosmos.levels'),
    ({'cosmos': {'levels': ['a', 'b', 'c', 'd']}}, 'cosmos.levels'),
    ({'trace': {'read_fraction': 1.5}}, 'trace.read_fraction'),
    ({'trace': {'pattern': 'zigzag'}}, 'trace.pattern'),
    ({'sim': {'nproc': -2}}, 'sim.nproc'),
    ({'output': {'format': 'xml'}}, 'output.format'),
    ({'lut': {'exact_soa_gain': 'perhaps'}}, 'lut.exact_soa_gain'),
    ({'levels': {'guard_band': -0.01}}, 'levels.guard_band'),
    ({'levels': {'overshoot': -0.5}}, 'levels.overshoot'),
    ({'timing': {'max_write_ns': 5}}, 'timing.max_write_ns'),
])
def test_bad_fields_name_their_path(tmp_path, body, path):
    assert _schema_path(tmp_path, body) == path


def test_decoder_and_max_write_reach_the_model(tmp_path):
    body = {'timing': {'max_write_ns': 20}, 'levels': {'guard_band': 0.02, 'overshoot': 0.1}}
    config = RunConfig({'config': _config_file(tmp_path, body)})
    assert config.decoder() == {'guard_band': 0.02, 'overshoot': 0.1}
    table = config.level_table()
    assert table.max_program_ns == 20.0
    assert table.rows[table.farthest_level()].program_ns == config.timing().max_write_ns


def test_default_decoder():
    assert RunConfig().decoder() == {'guard_band': cometdefs.DECODE_GUARD_BAND,
                                     'overshoot': cometdefs.DECODE_OVERSHOOT}


def test_bad_override(tmp_path):
    with pytest.raises(ConfigSchemaError) as exc:
        RunConfig({'arch': 'dram'})
    assert exc.value.path == 'sim.arch'


def test_saturating_path(tmp_path):
    path = _schema_path(tmp_path, {'paths': {'comet': ['coupler', ['intra_soa', 25]]}})
    assert path == 'paths'


def test_level_overrides(tmp_path, etc_dir):
    body = {'geometry': {'bits_per_cell': 2, 'subarray_cols': 512},
            'levels': {'overrides_file': os.path.join(etc_dir, 'level_overrides_b2.wcl')}}
    config = RunConfig({'config': _config_file(tmp_path, body)})
    table = config.level_table()
    assert [row.program_ns for row in table.rows] == [12.0, 55.0, 110.0, 165.0]
    assert [row.program_pj for row in table.rows] == [12.0, 55.0, 110.0, 170.0]


def test_level_overrides_wrong_density(tmp_path, etc_dir):
    body = {'levels': {'overrides_file': os.path.join(etc_dir, 'level_overrides_b2.wcl')}}
    assert _schema_path(tmp_path, body) == 'levels.overrides_file'


def test_as_published_crossbar(tmp_path):
    config = RunConfig({'config': _config_file(tmp_path, {'cosmos': {'as_published': True}})})
    xbar = config.crossbar()
    assert xbar.bits_per_cell == 4
    assert len(xbar.levels) == 16
    assert xbar.write_energy_pj == 135.0


def test_missing_config_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        RunConfig({'config': str(tmp_path / 'absent.json')})


def test_wcl_comma_list(tmp_path):
    path = tmp_path / 'levels.wcl'
    path.write_text('schema_version = 1\n<cosmos>\n    levels = 0.98, 0.88, 0.78, 0.68\n</cosmos>\n')
    xbar = RunConfig({'config': str(path)}).crossbar()
    assert xbar.levels == (0.98, 0.88, 0.78, 0.68)
