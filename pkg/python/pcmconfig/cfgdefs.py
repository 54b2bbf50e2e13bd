"""
    .. _pcmconfig-cfgdefs:

    **cfgdefs**
    -----------

    Section and key names of the run configuration, with the type and
    default of every key
"""

from collections import OrderedDict

from comet import cometdefs
from cosmos import cosmosdefs

SCHEMA_VERSION = 1
SCHEMA_VERSION_KEY = 'schema_version'

SW_GEOMETRY = 'geometry'
SW_TIMING = 'timing'
SW_LOSSES = 'losses'
SW_POWER = 'power'
SW_LEVELS = 'levels'
SW_LUT = 'lut'
SW_PATHS = 'paths'
SW_COSMOS = 'cosmos'
SW_TRACE = 'trace'
SW_SIM = 'sim'
SW_OUTPUT = 'output'
SECTIONS = (SW_GEOMETRY, SW_TIMING, SW_LOSSES, SW_POWER, SW_LEVELS, SW_LUT, SW_PATHS,
            SW_COSMOS, SW_TRACE, SW_SIM, SW_OUTPUT)

# value kinds
T_INT = 'int'
T_FLOAT = 'float'
T_BOOL = 'bool'
T_STR = 'str'
T_LIST = 'list'

FORMAT_JSON = 'json'
FORMAT_CSV = 'csv'
VALID_FORMATS = (FORMAT_JSON, FORMAT_CSV)

# dotted key -> (kind, default)
SCHEMA = OrderedDict([
    ('geometry.banks', (T_INT, cometdefs.DEFAULT_BANKS)),
    ('geometry.subarray_count', (T_INT, cometdefs.DEFAULT_SUBARRAY_COUNT)),
    ('geometry.subarray_rows', (T_INT, cometdefs.DEFAULT_SUBARRAY_ROWS)),
    ('geometry.subarray_cols', (T_INT, cometdefs.DEFAULT_SUBARRAY_COLS)),
    ('geometry.bits_per_cell', (T_INT, cometdefs.DEFAULT_BITS_PER_CELL)),
    ('geometry.channels', (T_INT, 1)),
    ('geometry.line_bytes', (T_INT, cometdefs.DEFAULT_LINE_BYTES)),
    ('geometry.capacity_bits', (T_INT, cometdefs.CHIP_CAPACITY_BITS)),

    ('timing.read_ns', (T_FLOAT, cometdefs.READ_NS)),
    ('timing.max_write_ns', (T_FLOAT, cometdefs.MAX_WRITE_NS)),
    ('timing.erase_ns', (T_FLOAT, cometdefs.ERASE_NS)),
    ('timing.burst_ns', (T_FLOAT, cometdefs.BURST_NS)),
    ('timing.interface_ns', (T_FLOAT, cometdefs.INTERFACE_NS)),
    ('timing.eo_tune_ns', (T_FLOAT, cometdefs.EO_TUNE_NS)),
    ('timing.gst_switch_ns', (T_FLOAT, cometdefs.GST_SWITCH_NS)),
    ('timing.bus_width_bits', (T_INT, cometdefs.BUS_WIDTH_BITS)),
    ('timing.burst_length', (T_INT, cometdefs.BURST_LENGTH)),
    ('timing.policy', (T_STR, cometdefs.POLICY_OPEN)),
    ('timing.interface_holds_bank', (T_BOOL, False)),

    ('losses.coupling_db', (T_FLOAT, cometdefs.COUPLING_DB)),
    ('losses.mr_drop_db', (T_FLOAT, cometdefs.MR_DROP_DB)),
    ('losses.mr_through_db', (T_FLOAT, cometdefs.MR_THROUGH_DB)),
    ('losses.eo_mr_drop_db', (T_FLOAT, cometdefs.EO_MR_DROP_DB)),
    ('losses.eo_mr_through_db', (T_FLOAT, cometdefs.EO_MR_THROUGH_DB)),
    ('losses.propagation_db_per_cm', (T_FLOAT, cometdefs.PROPAGATION_DB_PER_CM)),
    ('losses.bend_db_per_90', (T_FLOAT, cometdefs.BEND_DB_PER_90)),
    ('losses.gst_switch_db', (T_FLOAT, cometdefs.GST_SWITCH_DB)),
    ('losses.gst_cell_db', (T_FLOAT, cometdefs.GST_CELL_DB)),
    ('losses.interface_soa_gain_db', (T_FLOAT, cometdefs.INTERFACE_SOA_GAIN_DB)),
    ('losses.intra_soa_gain_db', (T_FLOAT, cometdefs.INTRA_SOA_GAIN_DB)),
    ('losses.max_net_gain_db', (T_FLOAT, cometdefs.MAX_NET_GAIN_DB)),

    ('power.p_eo_w_per_nm', (T_FLOAT, cometdefs.P_EO_W_PER_NM)),
    ('power.tuning_shift_nm', (T_FLOAT, cometdefs.TUNING_SHIFT_NM)),
    ('power.cell_power_crystalline_w', (T_FLOAT, cometdefs.CELL_POWER_MW[cometdefs.RESET_CRYSTALLINE] * 1e-3)),
    ('power.cell_power_amorphous_w', (T_FLOAT, cometdefs.CELL_POWER_MW[cometdefs.RESET_AMORPHOUS] * 1e-3)),
    ('power.intra_soa_power_w', (T_FLOAT, cometdefs.INTRA_SOA_POWER_W)),
    ('power.wall_plug_efficiency', (T_FLOAT, cometdefs.WALL_PLUG_EFFICIENCY)),

    ('levels.reset_mode', (T_STR, cometdefs.RESET_CRYSTALLINE)),
    ('levels.overrides_file', (T_STR, '')),
    ('levels.guard_band', (T_FLOAT, cometdefs.DECODE_GUARD_BAND)),
    ('levels.overshoot', (T_FLOAT, cometdefs.DECODE_OVERSHOOT)),

    ('lut.soa_interval', (T_INT, cometdefs.SOA_INTERVAL_ROWS)),
    ('lut.exact_soa_gain', (T_BOOL, True)),

    ('paths.die_length_cm', (T_FLOAT, cometdefs.DIE_LENGTH_CM)),
    ('paths.bends', (T_INT, cometdefs.DEFAULT_BENDS)),
    ('paths.comet', (T_LIST, [])),

    ('cosmos.banks', (T_INT, cosmosdefs.BANKS)),
    ('cosmos.rows', (T_INT, cosmosdefs.ROWS)),
    ('cosmos.cols', (T_INT, cosmosdefs.COLS)),
    ('cosmos.bits_per_cell', (T_INT, cosmosdefs.BITS_PER_CELL)),
    ('cosmos.subarray_rows', (T_INT, cosmosdefs.SUBARRAY_ROWS)),
    ('cosmos.subarray_cols', (T_INT, cosmosdefs.SUBARRAY_COLS)),
    ('cosmos.levels', (T_LIST, list(cosmosdefs.LEVELS))),
    ('cosmos.crosstalk_db', (T_FLOAT, cosmosdefs.CROSSTALK_DB)),
    ('cosmos.write_energy_pj', (T_FLOAT, cosmosdefs.WRITE_ENERGY_PJ)),
    ('cosmos.pulse_power_mw', (T_FLOAT, cosmosdefs.PULSE_POWER_MW)),
    ('cosmos.disturbance', (T_FLOAT, cosmosdefs.DISTURBANCE)),
    ('cosmos.disturbance_sign', (T_INT, cosmosdefs.DISTURBANCE_SIGN)),
    ('cosmos.read_ns', (T_FLOAT, cosmosdefs.READ_NS)),
    ('cosmos.write_ns', (T_FLOAT, cosmosdefs.WRITE_NS)),
    ('cosmos.erase_ns', (T_FLOAT, cosmosdefs.ERASE_NS)),
    ('cosmos.burst_ns', (T_FLOAT, cosmosdefs.BURST_NS)),
    ('cosmos.interface_ns', (T_FLOAT, cosmosdefs.INTERFACE_NS)),
    ('cosmos.bus_width_bits', (T_INT, cosmosdefs.BUS_WIDTH_BITS)),
    ('cosmos.burst_length', (T_INT, cosmosdefs.BURST_LENGTH)),
    ('cosmos.switch_ns', (T_FLOAT, cosmosdefs.SWITCH_NS)),
    ('cosmos.soa_arrays', (T_INT, cosmosdefs.SOA_ARRAYS)),
    ('cosmos.soas_per_array', (T_INT, cosmosdefs.SOAS_PER_ARRAY)),
    ('cosmos.decode_rule', (T_STR, cosmosdefs.DECODE_ONE_SIDED)),
    ('cosmos.blocking_rewrite', (T_BOOL, False)),
    ('cosmos.as_published', (T_BOOL, False)),
    ('cosmos.demo_steps', (T_INT, cosmosdefs.DEMO_STEPS)),

    ('trace.file', (T_STR, '')),
    ('trace.pattern', (T_STR, 'stream')),
    ('trace.count', (T_INT, 100000)),
    ('trace.read_fraction', (T_FLOAT, 1.0)),
    ('trace.inter_arrival_ns', (T_FLOAT, 0.0)),
    ('trace.footprint_bytes', (T_INT, 0)),
    ('trace.stride_lines', (T_INT, 1)),
    ('trace.seed', (T_INT, 1)),

    ('sim.arch', (T_STR, cometdefs.ARCH_COMET)),
    ('sim.timeline_ns', (T_FLOAT, 0.0)),
    ('sim.nproc', (T_INT, 0)),

    ('output.out', (T_STR, '')),
    ('output.format', (T_STR, FORMAT_JSON)),
])

# command line flag -> dotted key
CLI_OVERRIDES = OrderedDict([('arch', 'sim.arch'),
                             ('policy', 'timing.policy'),
                             ('seed', 'trace.seed'),
                             ('trace', 'trace.file'),
                             ('out', 'output.out'),
                             ('format', 'output.format')])

# geometry invariants whose name does not start with the offending field
GEOMETRY_INVARIANT_FIELDS = {'non-square-S_r': 'subarray_count',
                             'bits-per-cell': 'bits_per_cell',
                             'line-divides-bank': 'line_bytes'}


def default_config():
    """ The default document as nested OrderedDicts """
    doc = OrderedDict([(SCHEMA_VERSION_KEY, SCHEMA_VERSION)])
    for key, (_, default) in SCHEMA.items():
        section, name = key.split('.')
        doc.setdefault(section, OrderedDict())[name] = list(default) if isinstance(default, list) else default
    return doc
