"""
    .. _comet-integrity:

    **integrity**
    -------------

    Signal-integrity planning of a COMET subarray.

    Each row an optical signal crosses costs one EO-MR through loss. SOA
    arrays placed every `interval` rows restore what the preceding rows
    took, and a per-row gain looked up in a small table (the gain LUT)
    compensates the loss accumulated since the last SOA, so that every row
    reads back within the loss tolerance of its bit density.

    LUT selector rules, by bit density:

    =====  =============  =========================================
    b      rule           ordinal for row r
    =====  =============  =========================================
    1      ceil-div-10    ceil((r mod interval) / 10)
    2      ceil-div-4     ceil((r mod interval) / 4)
    4      identity       r mod interval
    =====  =============  =========================================

    The identity rule indexes its entries from 0, entry 0 being the 0 dB
    gain of the row next to the SOA. The ceil-div rules reserve ordinal 0
    for that row (0 dB, nothing stored) and store ordinals 1..K.
"""

import math
from collections import OrderedDict
from dataclasses import dataclass

import numpy as np

import pcmmisc.miscutils as miscutils
from comet import cometdefs
from comet import pcm_cell
from comet.exceptions import DecodeError, DomainError, LutConsistencyError

SEL_CEIL10 = 'ceil-div-10'
SEL_CEIL4 = 'ceil-div-4'
SEL_IDENTITY = 'identity'

# b -> (selector, divisor)
SELECTOR_BY_BITS = {1: (SEL_CEIL10, 10),
                    2: (SEL_CEIL4, 4),
                    4: (SEL_IDENTITY, 1)}

# half the gap to the adjacent symbol, as a fractional transmission drop
DEFAULT_TOLERABLE_DROP = {1: 0.50,
                          2: 0.25,
                          4: 0.06}

GAIN_STEP_DB = 0.1
_ROUND_GUARD = 1e-9


@dataclass(frozen=True)
class GainLUT:
    """ Row gain lookup table of one subarray

        Parameters
        ----------
        bits : int
            Bit density the table was built for.

        modulus : int
            Row modulus, the SOA interval.

        entries : tuple
            Stored gains in dB.

        selector : str
            One of 'ceil-div-10', 'ceil-div-4' or 'identity'.

        raw_count : int
            Entries the table would hold if every ordinal over the subarray
            were stored.

        stride : int
            Rows per ordinal (the selector divisor).
    """
    bits: int
    modulus: int
    entries: tuple
    selector: str
    raw_count: int
    stride: int

    @property
    def size(self):
        """ Stored entries """
        return len(self.entries)


def _check_bits(bits):
    if bits not in cometdefs.VALID_BITS_PER_CELL:
        raise DomainError('bits_per_cell', bits, str(cometdefs.VALID_BITS_PER_CELL))


def _check_loss(per_row_loss_db):
    if per_row_loss_db <= 0:
        raise DomainError('per_row_loss_db', per_row_loss_db, '(0, inf)')


def _quantize_up(gain_db):
    """ Round a gain up to the next GAIN_STEP_DB """
    return round(math.ceil(gain_db / GAIN_STEP_DB - _ROUND_GUARD) * GAIN_STEP_DB, 10)


#######################################################################
def loss_tolerance_db(bits, level_spacing=None):
    """ Loss a b-bit readout tolerates before it reaches the next symbol

        Parameters
        ----------
        bits : int
            Bits per cell, 1, 2 or 4.

        level_spacing : float, optional
            Tolerable fractional transmission drop. Default is 0.50, 0.25
            or 0.06 for b = 1, 2 and 4.

        Returns
        -------
        float
            -10 log10(1 - drop) in dB.
    """
    _check_bits(bits)
    drop = DEFAULT_TOLERABLE_DROP[bits] if level_spacing is None else level_spacing
    if not 0.0 < drop < 1.0:
        raise DomainError('level_spacing', drop, '(0, 1)')
    return -10.0 * math.log10(1.0 - drop)


#######################################################################
def soa_row_interval(gain_db, per_row_loss_db):
    """ Rows one SOA can restore, floor(gain / per-row loss) """
    _check_loss(per_row_loss_db)
    return int(math.floor(gain_db / per_row_loss_db * (1.0 + _ROUND_GUARD)))


#######################################################################
def rows_without_amp(tolerance_db, per_row_loss_db):
    """ Rows a readout can cross unamplified, floor(tolerance / per-row loss) """
    _check_loss(per_row_loss_db)
    return int(math.floor(tolerance_db / per_row_loss_db * (1.0 + _ROUND_GUARD)))


#######################################################################
def build_gain_lut(bits, subarray_rows=cometdefs.DEFAULT_SUBARRAY_ROWS,
                   interval=cometdefs.SOA_INTERVAL_ROWS,
                   per_row_loss_db=cometdefs.EO_MR_THROUGH_DB):
    """ Synthesize the gain LUT for a bit density

        Entry gain is ordinal x stride x per-row loss rounded up to 0.1 dB.

        Parameters
        ----------
        bits : int
            Bits per cell.

        subarray_rows : int, optional
            M_r, used for the raw entry count. Default 512.

        interval : int, optional
            SOA interval in rows. Default 46.

        per_row_loss_db : float, optional
            Loss of one row crossing. Default 0.33 dB.

        Returns
        -------
        GainLUT
    """
    _check_bits(bits)
    _check_loss(per_row_loss_db)
    if interval < 1:
        raise DomainError('interval', interval, '[1, inf)')

    selector, stride = SELECTOR_BY_BITS[bits]
    if selector == SEL_IDENTITY:
        entries = [_quantize_up(i * per_row_loss_db) for i in range(interval)]
        raw_count = len(entries)
    else:
        top = -(-(interval - 1) // stride)
        entries = [_quantize_up(o * stride * per_row_loss_db) for o in range(1, top + 1)]
        raw_count = len(entries)
        if selector == SEL_CEIL10:
            # one entry per 10 rows across the whole subarray
            raw_count = -(-subarray_rows // stride)

    lut = GainLUT(bits=bits, modulus=interval, entries=tuple(entries), selector=selector,
                  raw_count=raw_count, stride=stride)
    if miscutils.fwdebug_check(3, 'INTEGRITY_DEBUG'):
        miscutils.fwdebug_print("b=%d %s LUT, %d stored, %d raw" % (bits, selector, lut.size, raw_count))
    return lut


#######################################################################
def lut_entry_index(lut, row_id):
    """ Selector ordinal for a row (see the module notes for its meaning) """
    if row_id < 0:
        raise DomainError('row_id', row_id, '[0, inf)')
    rem = row_id % lut.modulus
    if lut.selector == SEL_IDENTITY:
        return rem
    return -(-rem // lut.stride)


#######################################################################
def lut_gain_for_row(lut, row_id):
    """ Gain applied when reading a row

        Parameters
        ----------
        lut : GainLUT
            The table.

        row_id : int
            Row inside the subarray (any non-negative row; the table is
            periodic in the SOA interval).

        Returns
        -------
        float
            Gain in dB.

        Raises
        ------
        LutConsistencyError
            If the selector points past the stored entries.
    """
    ordinal = lut_entry_index(lut, row_id)
    if lut.selector == SEL_IDENTITY:
        index = ordinal
    elif ordinal == 0:
        return 0.0
    else:
        index = ordinal - 1

    if index >= lut.size:
        raise LutConsistencyError(row_id, ordinal, lut.size)
    return lut.entries[index]


#######################################################################
def row_residual_db(lut, row_id, per_row_loss_db=cometdefs.EO_MR_THROUGH_DB, soa_gain_db=None):
    """ Loss left on a readout of a row after SOAs and LUT gain

        Parameters
        ----------
        lut : GainLUT
            The table.

        row_id : int
            Row inside the subarray.

        per_row_loss_db : float, optional
            Loss of one row crossing.

        soa_gain_db : float, optional
            Gain of each intra-subarray SOA. Default restores exactly the
            loss of one interval.

        Returns
        -------
        float
            Residual loss in dB, negative for overcompensation.
    """
    _check_loss(per_row_loss_db)
    interval_loss = lut.modulus * per_row_loss_db
    soa_gain = interval_loss if soa_gain_db is None else soa_gain_db
    accumulated = row_id * per_row_loss_db
    restored = (row_id // lut.modulus) * soa_gain
    return accumulated - restored - lut_gain_for_row(lut, row_id)


#######################################################################
def residual_profile(lut, subarray_rows, per_row_loss_db=cometdefs.EO_MR_THROUGH_DB, soa_gain_db=None):
    """ Residual loss of every row of a subarray as a numpy array """
    return np.array([row_residual_db(lut, r, per_row_loss_db, soa_gain_db)
                     for r in range(subarray_rows)])


#######################################################################
def failing_rows(lut, subarray_rows, tolerance_db, per_row_loss_db=cometdefs.EO_MR_THROUGH_DB,
                 soa_gain_db=None):
    """ Boolean numpy mask of the rows whose residual exceeds the tolerance """
    return np.abs(residual_profile(lut, subarray_rows, per_row_loss_db, soa_gain_db)) > tolerance_db + 1e-12


#######################################################################
def readout_error_db(lut, row_id, per_row_loss_db=cometdefs.EO_MR_THROUGH_DB, soa_gain_db=None):
    """ Part of a row's residual the decoder sees

        A ceil selector serves each group of `stride` rows with the gain of
        the group's last row. The spread inside the group is bounded by the
        loss tolerance; what reaches the decoder is the 0.1 dB step error
        of that gain plus the mismatch of the SOAs passed. For the identity
        selector this is row_residual_db.
    """
    _check_loss(per_row_loss_db)
    interval_loss = lut.modulus * per_row_loss_db
    soa_gain = interval_loss if soa_gain_db is None else soa_gain_db
    compensated = lut_entry_index(lut, row_id) * lut.stride * per_row_loss_db
    soa_error = (row_id // lut.modulus) * (interval_loss - soa_gain)
    return compensated + soa_error - lut_gain_for_row(lut, row_id)


def _decodes_back(table, factor, guard_band, overshoot):
    for row in table.rows:
        try:
            value = pcm_cell.decode_transmission(row.transmission * factor, table, guard_band, overshoot)
        except (DecodeError, DomainError):
            return False
        if value != row.level:
            return False
    return True


def decode_failures(lut, table, subarray_rows, per_row_loss_db=cometdefs.EO_MR_THROUGH_DB,
                    soa_gain_db=None, guard_band=cometdefs.DECODE_GUARD_BAND,
                    overshoot=cometdefs.DECODE_OVERSHOOT):
    """ Rows on which some level does not decode back to itself

        Every level of the table is read through the row's readout error
        (see readout_error_db) and decoded with the given guard band and
        overshoot.

        Parameters
        ----------
        lut : GainLUT
            The table.

        table : LevelTable
            Level table of the cells.

        subarray_rows : int
            M_r.

        guard_band : float, optional
            Refused zone around each decision boundary. Default 0.01.

        overshoot : float, optional
            Tolerated readout above a transmission of 1. Default 0.05.

        Returns
        -------
        numpy.ndarray
            Boolean mask, one entry per row.
    """
    if guard_band < 0:
        raise DomainError('guard_band', guard_band, '[0, inf)')
    if overshoot < 0:
        raise DomainError('overshoot', overshoot, '[0, inf)')
    errors = np.array([readout_error_db(lut, r, per_row_loss_db, soa_gain_db)
                       for r in range(subarray_rows)])
    # rows share few distinct errors
    distinct, inverse = np.unique(np.round(errors, 12), return_inverse=True)
    bad = np.array([not _decodes_back(table, 10.0 ** (-err / 10.0), guard_band, overshoot)
                    for err in distinct], dtype=bool)
    mask = bad[inverse]
    if miscutils.fwdebug_check(3, 'INTEGRITY_DEBUG'):
        miscutils.fwdebug_print("b=%d guard %g: %d rows fail to decode" %
                                (table.bits, guard_band, int(np.count_nonzero(mask))))
    return mask


#######################################################################
def integrity_plan(bits, subarray_rows=cometdefs.DEFAULT_SUBARRAY_ROWS,
                   soa_gain_db=cometdefs.INTRA_SOA_GAIN_DB,
                   per_row_loss_db=cometdefs.EO_MR_THROUGH_DB, level_spacing=None,
                   lut=None, restore_gain_db=None):
    """ Summary of the integrity plan of one bit density

        The SOA interval follows from soa_gain_db unless a prebuilt lut is
        given, whose modulus is then the interval. restore_gain_db is the
        gain the SOAs actually apply when computing residuals, None
        restoring exactly one interval.

        Returns
        -------
        tuple
            (OrderedDict with tolerance_db, soa_interval_rows,
            rows_without_amp, the LUT selector and sizes and the worst
            residual over the subarray; the GainLUT)
    """
    tolerance = loss_tolerance_db(bits, level_spacing)
    if lut is None:
        lut = build_gain_lut(bits, subarray_rows, soa_row_interval(soa_gain_db, per_row_loss_db),
                             per_row_loss_db)
    elif lut.bits != bits:
        raise DomainError('lut bits', lut.bits, 'b=%d' % bits)
    interval = lut.modulus
    profile = residual_profile(lut, subarray_rows, per_row_loss_db, restore_gain_db)

    plan = OrderedDict()
    plan['bits_per_cell'] = bits
    plan['tolerance_db'] = tolerance
    plan['soa_interval_rows'] = interval
    plan['rows_without_amp'] = rows_without_amp(tolerance, per_row_loss_db)
    plan['lut_selector'] = lut.selector
    plan['lut_entries'] = lut.size
    plan['lut_raw_entries'] = lut.raw_count
    plan['max_abs_residual_db'] = float(np.max(np.abs(profile)))
    plan['failing_rows'] = int(np.count_nonzero(np.abs(profile) > tolerance + 1e-12))
    return plan, lut
