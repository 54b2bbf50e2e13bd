"""
    .. _cosmos-cosmosdefs:

    **cosmosdefs**
    --------------

    Defaults of the corrected crossbar baseline
"""

# organization (B x N_r x N_c x b), 32 x 32 subarrays
BANKS = 16
ROWS = 16384
COLS = 16384
BITS_PER_CELL = 2
SUBARRAY_ROWS = 32
SUBARRAY_COLS = 32

# asymmetric levels 9% apart, clear (amorphous) state first
LEVELS = (0.99, 0.90, 0.81, 0.72)

CROSSTALK_DB = -18.0
WRITE_ENERGY_PJ = 750.0
PULSE_POWER_MW = 5.0
DISTURBANCE = 0.08
# +1 moves a disturbed neighbor toward crystalline
DISTURBANCE_SIGN = 1

# timing, ns
READ_NS = 25.0
WRITE_NS = 1600.0
ERASE_NS = 250.0
BURST_NS = 1.0
INTERFACE_NS = 105.0
BUS_WIDTH_BITS = 128
BURST_LENGTH = 8
SWITCH_NS = 100.0

SOA_ARRAYS = 6
SOAS_PER_ARRAY = 32

DECODE_ONE_SIDED = 'one-sided'
DECODE_NEAREST = 'nearest'
VALID_DECODE_RULES = (DECODE_ONE_SIDED, DECODE_NEAREST)

# legacy 4-bit cell of the uncorrected design
PUBLISHED_BITS_PER_CELL = 4
PUBLISHED_WRITE_ENERGY_PJ = 135.0

# corruption demo
DEMO_WIDTH = 16
DEMO_HEIGHT = 32
DEMO_STEPS = 4
