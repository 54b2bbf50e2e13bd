"""
    .. _cosmos-crossbar:

    **crossbar**
    ------------

    Model of a crossbar optical PCM memory with subtractive reads.

    Cells sit on waveguide crossings and have no per-cell isolation, so a
    write pulse heats the cells of the two adjacent rows and shifts their
    crystalline fraction. A cell's transmission is ``t_clear - f_c`` where
    t_clear is the transmission of the fully amorphous cell (the first
    level).

    Reads cannot address a single row. The whole subarray is read, the
    target row is reset, the subarray is read again and the controller
    subtracts the per-column losses. The row is then rewritten.

    Decoding is one-sided by default: a disturbance only lowers
    transmission, so level i owns the window (T_(i+1), T_i] and the last
    level a window of the same width below it; anything lower is corrupted.
    The 'nearest' rule picks the closest level instead.
"""

import math
from collections import OrderedDict
from dataclasses import dataclass, replace

import numpy as np

import pcmmisc.miscutils as miscutils
from comet import cometdefs
from comet import engine
from comet import photonics
from comet.geometry import MemoryGeometry, decompose_flat_address
from comet.pcm_cell import cell_insertion_loss_db, ladder_transmission
from comet.exceptions import DomainError
from cosmos import cosmosdefs

_EPS = 1e-9
_T_FLOOR = 1e-12


@dataclass(frozen=True)
class CrossbarConfig:
    """ Organization, levels, timing and power of the crossbar memory

        soa_arrays None derives the count from the worst cell loss with
        soa_arrays_per_subarray.
    """
    banks: int = cosmosdefs.BANKS
    rows: int = cosmosdefs.ROWS
    cols: int = cosmosdefs.COLS
    bits_per_cell: int = cosmosdefs.BITS_PER_CELL
    subarray_rows: int = cosmosdefs.SUBARRAY_ROWS
    subarray_cols: int = cosmosdefs.SUBARRAY_COLS
    levels: tuple = cosmosdefs.LEVELS
    crosstalk_db: float = cosmosdefs.CROSSTALK_DB
    write_energy_pj: float = cosmosdefs.WRITE_ENERGY_PJ
    pulse_power_mw: float = cosmosdefs.PULSE_POWER_MW
    disturbance: float = cosmosdefs.DISTURBANCE
    disturbance_sign: int = cosmosdefs.DISTURBANCE_SIGN
    read_ns: float = cosmosdefs.READ_NS
    write_ns: float = cosmosdefs.WRITE_NS
    erase_ns: float = cosmosdefs.ERASE_NS
    burst_ns: float = cosmosdefs.BURST_NS
    interface_ns: float = cosmosdefs.INTERFACE_NS
    bus_width_bits: int = cosmosdefs.BUS_WIDTH_BITS
    burst_length: int = cosmosdefs.BURST_LENGTH
    switch_ns: float = cosmosdefs.SWITCH_NS
    soa_arrays: int = cosmosdefs.SOA_ARRAYS
    soas_per_array: int = cosmosdefs.SOAS_PER_ARRAY
    decode_rule: str = cosmosdefs.DECODE_ONE_SIDED
    blocking_rewrite: bool = False
    die_length_cm: float = cometdefs.DIE_LENGTH_CM
    bends: int = cometdefs.DEFAULT_BENDS

    def __post_init__(self):
        for name in ('banks', 'rows', 'cols', 'subarray_rows', 'subarray_cols', 'bus_width_bits',
                     'burst_length', 'soas_per_array'):
            if getattr(self, name) < 1:
                raise DomainError(name, getattr(self, name), '[1, inf)')
        if self.rows % self.subarray_rows or self.cols % self.subarray_cols:
            raise DomainError('subarray size', (self.subarray_rows, self.subarray_cols),
                              'divisors of %d x %d' % (self.rows, self.cols))
        if len(self.levels) != 2 ** self.bits_per_cell:
            raise DomainError('levels', self.levels, '%d values for b=%d' % (2 ** self.bits_per_cell,
                                                                          self.bits_per_cell))
        if len(self.levels) < 2 or any(not 0.0 < t <= 1.0 for t in self.levels):
            raise DomainError('levels', self.levels, 'at least two transmissions in (0, 1]')
        if any(a <= b for a, b in zip(self.levels, self.levels[1:])):
            raise DomainError('levels', self.levels, 'strictly decreasing')
        if self.crosstalk_db == 0:
            raise DomainError('crosstalk_db', self.crosstalk_db, 'nonzero')
        if not 0.0 <= self.disturbance <= 1.0:
            raise DomainError('disturbance', self.disturbance, '[0, 1]')
        if self.disturbance_sign not in (1, -1):
            raise DomainError('disturbance_sign', self.disturbance_sign, '+1 or -1')
        if self.decode_rule not in cosmosdefs.VALID_DECODE_RULES:
            raise DomainError('decode_rule', self.decode_rule, str(cosmosdefs.VALID_DECODE_RULES))
        if self.soa_arrays is not None and self.soa_arrays < 0:
            raise DomainError('soa_arrays', self.soa_arrays, '[0, inf)')

    @property
    def t_clear(self):
        """ Transmission of the fully amorphous cell """
        return self.levels[0]

    @property
    def subarray_count(self):
        """ Subarrays stacked along the rows of a bank """
        return self.rows // self.subarray_rows

    @property
    def capacity_bits(self):
        """ B x N_r x N_c x b """
        return self.banks * self.rows * self.cols * self.bits_per_cell

    @classmethod
    def as_published(cls, **kwargs):
        """ The uncorrected design: 16-level 6% ladder, 135 pJ writes """
        nlevels = 2 ** cosmosdefs.PUBLISHED_BITS_PER_CELL
        levels = tuple(round(ladder_transmission(i), 12) for i in range(nlevels))
        return replace(cls(**kwargs), bits_per_cell=cosmosdefs.PUBLISHED_BITS_PER_CELL, levels=levels,
                       write_energy_pj=cosmosdefs.PUBLISHED_WRITE_ENERGY_PJ)

    def geometry(self):
        """ MemoryGeometry used to decompose addresses; one subarray
            spans every column of its row group
        """
        return MemoryGeometry(self.banks, self.subarray_count, self.subarray_rows, self.cols,
                              self.bits_per_cell)

    def timing(self, policy=cometdefs.POLICY_OPEN):
        """ The crossbar timing in engine terms """
        return engine.TimingParams(read_ns=self.read_ns, max_write_ns=self.write_ns,
                                   erase_ns=self.erase_ns, burst_ns=self.burst_ns,
                                   interface_ns=self.interface_ns, eo_tune_ns=0.0,
                                   gst_switch_ns=self.switch_ns, bus_width_bits=self.bus_width_bits,
                                   burst_length=self.burst_length, policy=policy)


class CrossbarArray:
    """ Crystalline fractions of a small simulated subarray

        Parameters
        ----------
        fractions : array_like
            rows x cols crystalline fractions in [0, 1].

        t_clear : float
            Transmission of the fully amorphous cell.

        isolated : bool, optional
            True models COMET's isolated cells, which neighbors never
            disturb. Default False.
    """

    def __init__(self, fractions, t_clear, isolated=False):
        frac = np.array(fractions, dtype=float)
        if frac.ndim != 2:
            raise DomainError('fractions', frac.shape, '2-d array')
        if np.any(frac < 0) or np.any(frac > 1):
            raise DomainError('fractions', 'min %g max %g' % (frac.min(), frac.max()), '[0, 1]')
        self.fractions = frac
        self.t_clear = t_clear
        self.isolated = isolated

    @classmethod
    def from_levels(cls, values, cfg, isolated=False):
        """ Array whose cells hold the given level indices """
        vals = np.asarray(values, dtype=int)
        if np.any(vals < 0) or np.any(vals >= len(cfg.levels)):
            raise DomainError('values', 'min %d max %d' % (vals.min(), vals.max()),
                              '[0, %d)' % len(cfg.levels))
        trans = np.asarray(cfg.levels)[vals]
        return cls(np.clip(cfg.t_clear - trans, 0.0, 1.0), cfg.t_clear, isolated)

    @property
    def shape(self):
        return self.fractions.shape

    def copy(self):
        return CrossbarArray(self.fractions.copy(), self.t_clear, self.isolated)

    def transmission(self):
        """ Cell transmissions, t_clear - f_c clamped to [0, 1] """
        return np.clip(self.t_clear - self.fractions, 0.0, 1.0)


#######################################################################
def decode_levels(trans, cfg):
    """ Level index of each transmission, -1 where it is corrupted

        Parameters
        ----------
        trans : array_like
            Transmissions.

        cfg : CrossbarConfig
            Supplies the levels and the decode rule.

        Returns
        -------
        numpy.ndarray
            Integer level indices, same shape as trans.
    """
    trans = np.asarray(trans, dtype=float)
    levels = np.asarray(cfg.levels, dtype=float)
    if cfg.decode_rule == cosmosdefs.DECODE_NEAREST:
        return np.argmin(np.abs(trans[..., None] - levels), axis=-1)

    count = np.sum(levels >= trans[..., None] - _EPS, axis=-1)
    values = np.maximum(count - 1, 0)
    floor = levels[-1] - (levels[-2] - levels[-1])
    return np.where(trans <= floor + _EPS, -1, values)


#######################################################################
def crosstalk_energy_pj(write_energy_pj, crosstalk_db):
    """ Energy a write couples into a neighbor, E x 10**(dB/10) """
    if write_energy_pj < 0:
        raise DomainError('write_energy_pj', write_energy_pj, '[0, inf)')
    return write_energy_pj * 10.0 ** (crosstalk_db / 10.0)


#######################################################################
def apply_write_disturbance(arr, row, cfg):
    """ Thermal disturbance of the rows next to a written row

        Parameters
        ----------
        arr : CrossbarArray
            The array before the write.

        row : int
            The written row.

        cfg : CrossbarConfig
            Supplies the disturbance size and direction.

        Returns
        -------
        CrossbarArray
            A new array; rows row-1 and row+1 shifted by the disturbance
            and clamped to [0, 1]. Isolated arrays come back unchanged.
    """
    nrows = arr.shape[0]
    if row < 0 or row >= nrows:
        raise DomainError('row', row, '[0, %d)' % nrows)
    out = arr.copy()
    if arr.isolated:
        return out
    shift = cfg.disturbance_sign * cfg.disturbance
    for nbr in (row - 1, row + 1):
        if 0 <= nbr < nrows:
            out.fractions[nbr] = np.clip(out.fractions[nbr] + shift, 0.0, 1.0)
    return out


#######################################################################
def write_row(arr, row, values, cfg):
    """ Program a row to level indices, disturbing its neighbors """
    out = apply_write_disturbance(arr, row, cfg)
    vals = np.asarray(values, dtype=int)
    out.fractions[row] = np.clip(cfg.t_clear - np.asarray(cfg.levels)[vals], 0.0, 1.0)
    return out


#######################################################################
def _column_loss_db(trans):
    return np.sum(-10.0 * np.log10(np.clip(trans, _T_FLOOR, 1.0)), axis=0)


def subtractive_read(arr, row, cfg):
    """ Read one row by reading, resetting it and reading again

        Parameters
        ----------
        arr : CrossbarArray
            The array.

        row : int
            Row to read.

        cfg : CrossbarConfig
            Supplies the levels and decode rule.

        Returns
        -------
        tuple
            (values, reset array, decode error count); values holds -1 for
            cells that could not be decoded, the reset array has the row
            cleared to the amorphous state.
    """
    nrows = arr.shape[0]
    if row < 0 or row >= nrows:
        raise DomainError('row', row, '[0, %d)' % nrows)

    first = _column_loss_db(arr.transmission())
    reset = arr.copy()
    reset.fractions[row] = 0.0
    second = _column_loss_db(reset.transmission())

    recovered = arr.t_clear * 10.0 ** (-(first - second) / 10.0)
    values = decode_levels(recovered, cfg)
    errors = int(np.count_nonzero(values < 0))
    if miscutils.fwdebug_check(6, 'CROSSBAR_DEBUG'):
        miscutils.fwdebug_print("row %d: recovered %s, %d errors" % (row, recovered, errors))
    return values, reset, errors


#######################################################################
def soa_arrays_per_subarray(cfg, gain_db=cometdefs.INTRA_SOA_GAIN_DB):
    """ SOA arrays a subarray needs for its row and column losses

        2 x floor(M x worst cell loss / SOA gain), the worst cell being
        the lowest level.
    """
    worst = cell_insertion_loss_db(cfg.levels[-1])
    return 2 * int(math.floor(cfg.subarray_rows * worst / gain_db))


def _soa_arrays(cfg, losses):
    if cfg.soa_arrays is not None:
        return cfg.soa_arrays
    return soa_arrays_per_subarray(cfg, losses.intra_soa_gain_db)


def line_cells(cfg, line_bytes=cometdefs.DEFAULT_LINE_BYTES):
    """ Cells one cache line occupies """
    return line_bytes * 8 // cfg.bits_per_cell


def active_subarrays(cfg, line_bytes=cometdefs.DEFAULT_LINE_BYTES):
    """ Subarrays powered while every bank serves a line """
    return cfg.banks * max(1, line_cells(cfg, line_bytes) // cfg.subarray_cols)


#######################################################################
def cosmos_worst_case_path(cfg, losses):
    """ Laser-to-detector path through a crossbar subarray

        coupler -> PCM subarray switch -> waveguide -> data-in MR drop ->
        a full column of cells with the SOA arrays spread along it ->
        data-out MR drop -> coupler
    """
    n_soa = _soa_arrays(cfg, losses) // 2
    path = [photonics.PathElement(photonics.COUPLER),
            photonics.PathElement(photonics.GST_SWITCH),
            photonics.PathElement(photonics.WAVEGUIDE, cfg.die_length_cm),
            photonics.PathElement(photonics.BEND, cfg.bends),
            photonics.PathElement(photonics.MR_DROP),
            photonics.PathElement(photonics.GST_CELL, cfg.subarray_rows)]
    path.extend([photonics.PathElement(photonics.INTRA_SOA, losses.intra_soa_gain_db)] * n_soa)
    path.extend([photonics.PathElement(photonics.MR_DROP),
                 photonics.PathElement(photonics.COUPLER)])
    return tuple(path)


#######################################################################
def cosmos_power_stack(cfg, losses, power, line_bytes=cometdefs.DEFAULT_LINE_BYTES):
    """ Laser and SOA power of the crossbar memory

        Parameters
        ----------
        cfg : CrossbarConfig
            The crossbar.

        losses : LossParams
            Loss atoms.

        power : PowerParams
            Power constants; the cell power is the crossbar pulse power.

        line_bytes : int, optional
            Cache line size, which sets the lit wavelengths.

        Returns
        -------
        OrderedDict
            laser_w, soa_w, eo_tuning_w (always 0), total_w
    """
    cell_power = replace(power, cell_power_amorphous_w=cfg.pulse_power_mw * 1e-3)
    geom = cfg.geometry()
    stack = OrderedDict()
    stack['laser_w'] = photonics.laser_power_w(geom, cosmos_worst_case_path(cfg, losses), losses,
                                               cell_power, cometdefs.RESET_AMORPHOUS,
                                               wavelengths=line_cells(cfg, line_bytes))
    stack['soa_w'] = (_soa_arrays(cfg, losses) * cfg.soas_per_array * power.intra_soa_power_w *
                      active_subarrays(cfg, line_bytes))
    stack['eo_tuning_w'] = 0.0
    stack['total_w'] = math.fsum([stack['laser_w'], stack['soa_w'], stack['eo_tuning_w']])
    return stack


#######################################################################
class CosmosSimulator(engine.MemorySimulator):
    """ Trace simulation of the crossbar memory

        A READ switches to the row group when it changes, reads the
        subarray, resets the row, reads again and bursts the line. The
        rewrite that restores the row costs a full line write in energy;
        it keeps the bank busy only with blocking_rewrite. A WRITE
        switches, erases and writes.
    """
    arch = cometdefs.ARCH_COSMOS

    def __init__(self, cfg, optics, line_bytes=cometdefs.DEFAULT_LINE_BYTES, timeline_ns=None):
        timing = cfg.timing()
        engine.MemorySimulator.__init__(self, line_bytes, timing.interface_ns, False, timeline_ns)
        self.cfg = cfg
        self.geometry = cfg.geometry()
        self.cells_per_line = line_cells(cfg, line_bytes)
        self.burst_length = timing.burst_length_for(line_bytes)
        self.stack = cosmos_power_stack(cfg, optics.losses, optics.power, line_bytes)
        self._static = OrderedDict([(cometdefs.E_LASER, self.stack['laser_w'])])
        self._busy = OrderedDict([(cometdefs.E_SOA, self.stack['soa_w'] / cfg.banks)])

    def static_power_w(self):
        return self._static

    def busy_power_w(self):
        return self._busy

    def locate(self, address):
        phys = decompose_flat_address(address, self.geometry, self.line_bytes)
        group = phys.row_id // self.cfg.subarray_rows
        return engine.LineLocation(bank=(phys.channel, phys.bank),
                                   subarray=(phys.channel, group),
                                   row=phys.row_id)

    def service(self, bank, op, loc, level):
        cfg = self.cfg
        switched = bank.subarray != loc.subarray
        bank.subarray = loc.subarray
        bank.row = loc.row
        busy = cfg.switch_ns if switched else 0.0
        energy = self.cells_per_line * cfg.write_energy_pj

        if op == cometdefs.OP_READ:
            busy += cfg.read_ns + cfg.erase_ns + cfg.read_ns + self.burst_length * cfg.burst_ns
            if cfg.blocking_rewrite:
                busy += cfg.write_ns
        else:
            busy += cfg.erase_ns + cfg.write_ns
        return engine.Access(busy_ns=busy, energy_pj=energy, switched=switched)


#######################################################################
def simulate_cosmos(trace, cfg, optics, line_bytes=cometdefs.DEFAULT_LINE_BYTES, timeline_ns=None):
    """ Simulate a trace on the crossbar memory, see CosmosSimulator """
    return CosmosSimulator(cfg, optics, line_bytes, timeline_ns).run(trace)
