"""
    .. _comet-geometry:

    **geometry**
    ------------

    Memory organization of a COMET chip and the translation of addresses
    onto it.

    A chip has B banks of N_r x N_c cells storing b bits each. A bank is cut
    into S_r x S_c subarrays of M_r x M_c cells; COMET always uses S_c = 1 so
    that M_c = N_c, and lays the S_r subarrays out as a sqrt(S_r) x sqrt(S_r)
    grid for addressing.

    Flat byte addresses are sliced, low bits to high bits, as::

        | channel | row | column | bank | offset |

    where offset selects the byte inside a cache line, the bank bits sit
    directly above it so that consecutive lines interleave across the
    banks, and column counts line-sized groups of cells inside a row.
"""

import math
from collections import OrderedDict
from dataclasses import dataclass

import pcmmisc.miscutils as miscutils
from comet import cometdefs
from comet.exceptions import GeometryError, AddressBoundsError, CapacityError, DomainError


@dataclass(frozen=True)
class MemoryGeometry:
    """ Bank/subarray/cell organization of one memory channel

        Parameters
        ----------
        banks : int
            Number of banks, B.

        subarray_count : int
            Subarrays per bank, S_r (with S_c = 1).

        subarray_rows : int
            Rows per subarray, M_r.

        subarray_cols : int
            Cells per subarray row, M_c (= N_c).

        bits_per_cell : int
            Bits stored per cell, b.

        channels : int, optional
            Number of independent channels. Default is 1.
    """
    banks: int
    subarray_count: int
    subarray_rows: int
    subarray_cols: int
    bits_per_cell: int
    channels: int = 1

    @property
    def subarray_col_count(self):
        """ S_c, always 1 """
        return 1

    @property
    def subarray_grid(self):
        """ Side of the sqrt(S_r) x sqrt(S_r) subarray layout """
        return math.isqrt(self.subarray_count)

    @property
    def total_rows(self):
        """ N_r = S_r x M_r """
        return self.subarray_count * self.subarray_rows

    @property
    def total_cols(self):
        """ N_c = S_c x M_c """
        return self.subarray_col_count * self.subarray_cols

    @property
    def bank_bits(self):
        """ Bits held by one bank """
        return self.total_rows * self.total_cols * self.bits_per_cell

    @property
    def capacity_bits(self):
        """ B x N_r x N_c x b """
        return self.banks * self.bank_bits

    @property
    def capacity_bytes(self):
        """ Capacity of all channels in bytes """
        return self.channels * self.capacity_bits // 8

    @property
    def row_bits(self):
        """ Bits delivered by one row activation of one bank """
        return self.total_cols * self.bits_per_cell

    def describe(self):
        """ Return the organization as an ordered dict for reports """
        return OrderedDict([('banks', self.banks),
                            ('subarray_count', self.subarray_count),
                            ('subarray_rows', self.subarray_rows),
                            ('subarray_cols', self.subarray_cols),
                            ('bits_per_cell', self.bits_per_cell),
                            ('channels', self.channels),
                            ('total_rows', self.total_rows),
                            ('total_cols', self.total_cols),
                            ('capacity_bits', self.capacity_bits)])


@dataclass(frozen=True)
class PhysicalAddress:
    """ {Channel_ID, Row_ID, Bank_ID, Column_ID} plus the byte offset """
    channel: int
    row_id: int
    bank: int
    column_id: int
    offset: int = 0


@dataclass(frozen=True)
class MappedAddress:
    """ {Channel_ID, Subarray_ID, Subarray_ROW, Bank_ID, Subarray_COL} """
    channel: int
    subarray_id: int
    subarray_row: int
    bank: int
    subarray_col: int


def _is_power_of_two(val):
    return val > 0 and (val & (val - 1)) == 0


#######################################################################
def validate_geometry(g):
    """ Check a memory organization against the COMET invariants

        Parameters
        ----------
        g : MemoryGeometry
            The organization to check.

        Returns
        -------
        MemoryGeometry
            The same object; derived totals are available as properties.

        Raises
        ------
        GeometryError
            Naming the first violated invariant.
    """
    for field in ('banks', 'subarray_count', 'subarray_rows', 'subarray_cols',
                  'bits_per_cell', 'channels'):
        val = getattr(g, field)
        if not isinstance(val, int) or isinstance(val, bool):
            raise GeometryError('integer-dimension', '%s=%r' % (field, val))
        if val < 1:
            raise GeometryError('zero-dimension', '%s=%d' % (field, val))

    if g.bits_per_cell not in cometdefs.VALID_BITS_PER_CELL:
        raise GeometryError('bits-per-cell', 'b=%d not in %s' % (g.bits_per_cell,
                                                                 cometdefs.VALID_BITS_PER_CELL))

    root = math.isqrt(g.subarray_count)
    if root * root != g.subarray_count:
        raise GeometryError('non-square-S_r', 'S_r=%d has no integer square root' % g.subarray_count)

    for field in ('banks', 'subarray_count', 'subarray_rows', 'subarray_cols', 'channels'):
        if not _is_power_of_two(getattr(g, field)):
            raise GeometryError('power-of-two', '%s=%d' % (field, getattr(g, field)))

    if miscutils.fwdebug_check(6, 'GEOMETRY_DEBUG'):
        miscutils.fwdebug_print("valid geometry %s, capacity %d bits" % (g, g.capacity_bits))
    return g


#######################################################################
def map_address(a, g):
    """ Map {Channel, Row, Bank, Column} onto the subarray organization

        Parameters
        ----------
        a : PhysicalAddress
            The address to map.

        g : MemoryGeometry
            A validated organization.

        Returns
        -------
        MappedAddress
            Channel and bank pass through; the row picks the subarray and its
            row, the column picks the subarray column.

        Raises
        ------
        AddressBoundsError
            If any field lies outside the organization.
    """
    _check_bounds(a, g)

    id_1 = a.row_id // g.subarray_rows
    id_2 = a.column_id // g.subarray_cols
    subarray_id = id_2 * g.subarray_grid + id_1
    if subarray_id >= g.subarray_count * g.subarray_col_count:
        raise GeometryError('subarray-id-range', 'ID_2=%d, ID_1=%d give %d' % (id_2, id_1, subarray_id))

    return MappedAddress(channel=a.channel,
                         subarray_id=subarray_id,
                         subarray_row=a.row_id % g.subarray_rows,
                         bank=a.bank,
                         subarray_col=a.column_id % g.subarray_cols)


def _check_bounds(a, g):
    """ Raise AddressBoundsError for the first field out of range """
    for field, bound in (('channel', g.channels),
                         ('row_id', g.total_rows),
                         ('bank', g.banks),
                         ('column_id', g.total_cols)):
        val = getattr(a, field)
        if val < 0 or val >= bound:
            raise AddressBoundsError(field, val, bound)


#######################################################################
def cache_line_cells(g, line_bytes):
    """ Number of cells one cache line occupies in a bank

        Parameters
        ----------
        g : MemoryGeometry
            A validated organization.

        line_bytes : int
            Cache line size, one of 32, 64 or 128.

        Returns
        -------
        int
            line bits / b

        Raises
        ------
        DomainError
            If the line size is not supported.

        GeometryError
            If a bank does not hold a whole number of lines.
    """
    if line_bytes not in cometdefs.VALID_LINE_BYTES:
        raise DomainError('line_bytes', line_bytes, str(cometdefs.VALID_LINE_BYTES))
    line_bits = line_bytes * 8
    if g.bank_bits % line_bits:
        raise GeometryError('line-divides-bank', 'bank of %d bits, line of %d bits' % (g.bank_bits,
                                                                                      line_bits))
    return line_bits // g.bits_per_cell


def _lines_per_bank(g, line_bytes):
    return g.bank_bits // (line_bytes * 8)


#######################################################################
def decompose_flat_address(byte_addr, g, line_bytes=cometdefs.DEFAULT_LINE_BYTES):
    """ Slice a flat byte address into a physical address

        Parameters
        ----------
        byte_addr : int
            The byte address.

        g : MemoryGeometry
            A validated organization.

        line_bytes : int, optional
            Cache line size. Default is 128.

        Returns
        -------
        PhysicalAddress
            column_id is the first cell of the line inside its row.

        Raises
        ------
        CapacityError
            If the address lies past the last byte of the memory.
    """
    cells = cache_line_cells(g, line_bytes)
    if byte_addr < 0 or byte_addr >= g.capacity_bytes:
        raise CapacityError(byte_addr, g.capacity_bytes)

    offset = byte_addr % line_bytes
    line = byte_addr // line_bytes
    bank = line % g.banks
    rest = line // g.banks
    lines_per_bank = _lines_per_bank(g, line_bytes)
    bank_line = rest % lines_per_bank
    channel = rest // lines_per_bank

    cell = bank_line * cells
    addr = PhysicalAddress(channel=channel,
                           row_id=cell // g.total_cols,
                           bank=bank,
                           column_id=cell % g.total_cols,
                           offset=offset)
    if miscutils.fwdebug_check(9, 'GEOMETRY_DEBUG'):
        miscutils.fwdebug_print("0x%x -> %s" % (byte_addr, addr))
    return addr


#######################################################################
def compose_flat_address(a, g, line_bytes=cometdefs.DEFAULT_LINE_BYTES):
    """ Inverse of decompose_flat_address

        Parameters
        ----------
        a : PhysicalAddress
            The address; its column must start a line.

        g : MemoryGeometry
            A validated organization.

        line_bytes : int, optional
            Cache line size. Default is 128.

        Returns
        -------
        int
            The flat byte address.

        Raises
        ------
        AddressBoundsError
            If a field is out of range or the cell is not line aligned.
    """
    cells = cache_line_cells(g, line_bytes)
    _check_bounds(a, g)
    if a.offset < 0 or a.offset >= line_bytes:
        raise AddressBoundsError('offset', a.offset, line_bytes)

    cell = a.row_id * g.total_cols + a.column_id
    if cell % cells:
        raise AddressBoundsError('column_id', a.column_id, g.total_cols)
    bank_line = cell // cells
    line = (a.channel * _lines_per_bank(g, line_bytes) + bank_line) * g.banks + a.bank
    return line * line_bytes + a.offset


#######################################################################
def geometry_family(capacity_bits=cometdefs.CHIP_CAPACITY_BITS, banks=cometdefs.DEFAULT_BANKS,
                    subarray_count=cometdefs.DEFAULT_SUBARRAY_COUNT,
                    subarray_rows=cometdefs.DEFAULT_SUBARRAY_ROWS):
    """ The equal-capacity organizations for b = 1, 2 and 4

        M_c shrinks as b grows so that capacity and the bits delivered by a
        row activation stay constant.

        Parameters
        ----------
        capacity_bits : int, optional
            Chip capacity. Default is 2**33 bits (8 Gbit).

        banks, subarray_count, subarray_rows : int, optional
            Shared B, S_r and M_r. Defaults are 4, 4096 and 512.

        Returns
        -------
        OrderedDict
            b -> validated MemoryGeometry
    """
    family = OrderedDict()
    for bits in cometdefs.VALID_BITS_PER_CELL:
        denom = banks * subarray_count * subarray_rows * bits
        if capacity_bits % denom:
            raise GeometryError('family-capacity', '%d bits not divisible by %d' % (capacity_bits, denom))
        family[bits] = validate_geometry(MemoryGeometry(banks, subarray_count, subarray_rows,
                                                        capacity_bits // denom, bits))
    return family
