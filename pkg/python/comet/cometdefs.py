"""
    .. _comet-cometdefs:

    **cometdefs**
    -------------

    Constants used across the COMET model to make changes easier.
    Default values are the optical loss/power parameters and the
    architectural timing of the COMET design.
"""

# bit densities a COMET cell can be configured for
VALID_BITS_PER_CELL = (1, 2, 4)
VALID_LINE_BYTES = (32, 64, 128)
DEFAULT_LINE_BYTES = 128

# 8 GB main memory chip, counted in bits
CHIP_CAPACITY_BITS = 2 ** 33

# COMET-4b organization (B x S_r x M_r x M_c x b)
DEFAULT_BANKS = 4
DEFAULT_SUBARRAY_COUNT = 4096
DEFAULT_SUBARRAY_ROWS = 512
DEFAULT_SUBARRAY_COLS = 256
DEFAULT_BITS_PER_CELL = 4

######################################################################
# transmission ladder of the 4-bit GST cell
LADDER_LEVELS = 16
LADDER_TOP = 0.95
LADDER_SPACING = 0.06

RESET_CRYSTALLINE = 'crystalline-reset'
RESET_AMORPHOUS = 'amorphous-reset'
VALID_RESET_MODES = (RESET_CRYSTALLINE, RESET_AMORPHOUS)

RESET_ENERGY_PJ = {RESET_CRYSTALLINE: 880.0,
                   RESET_AMORPHOUS: 280.0}
# power delivered to the cell while programming, mW
CELL_POWER_MW = {RESET_CRYSTALLINE: 1.0,
                 RESET_AMORPHOUS: 5.0}

MIN_PROGRAM_NS = 10.0
MAX_WRITE_NS = 170.0
DECODE_GUARD_BAND = 0.01
# amplifier overshoot accepted by the decoder
DECODE_OVERSHOOT = 0.05

# C-band propagation loss trend of the GST cell waveguide
CBAND_LOW_NM = 1530.0
CBAND_HIGH_NM = 1565.0
CBAND_LOSS_LOW_DB_PER_MM = 0.073
CBAND_LOSS_HIGH_DB_PER_MM = 0.067

######################################################################
# optical loss parameters, dB
COUPLING_DB = 1.0
MR_DROP_DB = 0.5
MR_THROUGH_DB = 0.02
EO_MR_DROP_DB = 1.6
EO_MR_THROUGH_DB = 0.33
PROPAGATION_DB_PER_CM = 0.1
BEND_DB_PER_90 = 0.01
GST_SWITCH_DB = 0.2
INTERFACE_SOA_GAIN_DB = 20.0
INTRA_SOA_GAIN_DB = 15.2
GST_CELL_DB = 1.4
MAX_NET_GAIN_DB = 20.0

# power parameters
P_EO_W_PER_NM = 4.0e-6
TUNING_SHIFT_NM = 1.0
INTRA_SOA_POWER_W = 1.4e-3
WALL_PLUG_EFFICIENCY = 0.20
DIE_LENGTH_CM = 2.0
DEFAULT_BENDS = 4

SOA_INTERVAL_ROWS = 46

######################################################################
# timing, ns
READ_NS = 10.0
ERASE_NS = 210.0
BURST_NS = 1.0
INTERFACE_NS = 105.0
EO_TUNE_NS = 2.0
GST_SWITCH_NS = 100.0
BUS_WIDTH_BITS = 256
BURST_LENGTH = 4

POLICY_OPEN = 'open'
POLICY_CLOSED = 'closed'
VALID_POLICIES = (POLICY_OPEN, POLICY_CLOSED)

OP_READ = 'R'
OP_WRITE = 'W'
VALID_OPS = (OP_READ, OP_WRITE)

ARCH_COMET = 'comet'
ARCH_COSMOS = 'cosmos'
VALID_ARCHS = (ARCH_COMET, ARCH_COSMOS)

# energy components reported by the simulators
E_LASER = 'laser'
E_SOA = 'soa'
E_EO = 'eo_tuning'
E_WRITE = 'write_pulse'
ENERGY_COMPONENTS = (E_LASER, E_SOA, E_EO, E_WRITE)

REPORT_SCHEMA_VERSION = 1

# exit codes
EXIT_SUCCESS = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_NOFILE = 3
