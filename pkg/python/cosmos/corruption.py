"""
    .. _cosmos-corruption:

    **corruption**
    --------------

    Data corruption of an image stored in a crossbar array, compared with
    the same image in isolated (COMET) cells.

    Input is a byte matrix file::

        offset 0   uint32 little-endian   width (bytes per row)
        offset 4   uint32 little-endian   height (rows)
        offset 8   width x height bytes, row major

    Each byte is split MSB first into symbols of the cell's bit density
    (two 4-bit symbols for the 16-level cell, four 2-bit symbols for the
    4-level cell), so a matrix row becomes one array row.

    Disturbance steps: rows with index 1 mod 3 are rewritten with their own
    data. Every other row has exactly one rewritten neighbor, so each step
    disturbs each of them exactly once.
"""

import struct
from collections import OrderedDict

import numpy as np

import pcmmisc.miscutils as miscutils
from comet.exceptions import DomainError
from cosmos import cosmosdefs
from cosmos.crossbar import CrossbarArray, decode_levels, write_row

HEADER = struct.Struct('<II')


#######################################################################
def read_byte_matrix(filename):
    """ Read a byte matrix file into a (height, width) uint8 array """
    with open(filename, 'rb') as infh:
        data = infh.read()
    if len(data) < HEADER.size:
        raise DomainError('byte matrix header', len(data), '>= %d bytes' % HEADER.size)
    width, height = HEADER.unpack_from(data)
    body = np.frombuffer(data, dtype=np.uint8, offset=HEADER.size)
    if body.size != width * height:
        raise DomainError('byte matrix body', body.size, '%d x %d = %d bytes' % (width, height,
                                                                                width * height))
    return body.reshape(height, width).copy()


def write_byte_matrix(filename, matrix):
    """ Write a (height, width) uint8 array as a byte matrix file """
    mat = np.asarray(matrix, dtype=np.uint8)
    with open(filename, 'wb') as outfh:
        outfh.write(HEADER.pack(mat.shape[1], mat.shape[0]))
        outfh.write(mat.tobytes())


def gradient(width=cosmosdefs.DEMO_WIDTH, height=cosmosdefs.DEMO_HEIGHT):
    """ Diagonal grayscale ramp used when no matrix is given """
    if width < 1 or height < 1:
        raise DomainError('gradient size', (width, height), 'positive')
    ys, xs = np.mgrid[0:height, 0:width]
    return ((xs + ys) * 255 // max(1, width + height - 2)).astype(np.uint8)


#######################################################################
def bytes_to_symbols(matrix, bits):
    """ Split every byte MSB first into 8 / bits symbols """
    if bits not in (1, 2, 4, 8):
        raise DomainError('bits', bits, '1, 2, 4 or 8')
    mat = np.asarray(matrix, dtype=np.uint8)
    per_byte = 8 // bits
    shifts = np.arange(per_byte - 1, -1, -1) * bits
    syms = (mat[..., None] >> shifts) & ((1 << bits) - 1)
    return syms.reshape(mat.shape[0], mat.shape[1] * per_byte).astype(int)


def symbols_to_bytes(symbols, bits):
    """ Inverse of bytes_to_symbols """
    syms = np.asarray(symbols, dtype=np.uint16)
    per_byte = 8 // bits
    syms = syms.reshape(syms.shape[0], -1, per_byte)
    shifts = np.arange(per_byte - 1, -1, -1) * bits
    return np.bitwise_or.reduce(syms << shifts, axis=-1).astype(np.uint8)


#######################################################################
def disturbance_step(arr, stored, cfg):
    """ Rewrite the rows with index 1 mod 3 in place of their own data """
    for row in range(1, arr.shape[0], 3):
        arr = write_row(arr, row, stored[row], cfg)
    return arr


def corrupted_count(arr, stored, cfg):
    """ Cells whose direct readout differs from the stored symbol """
    return int(np.count_nonzero(decode_levels(arr.transmission(), cfg) != stored))


#######################################################################
def run_corruption_demo(matrix, cfg, steps=cosmosdefs.DEMO_STEPS):
    """ Corrupted symbols after each disturbance step

        Parameters
        ----------
        matrix : numpy.ndarray
            (height, width) uint8 image.

        cfg : CrossbarConfig
            The crossbar; its level count sets the symbol width.

        steps : int, optional
            Number of disturbance steps. Default 4.

        Returns
        -------
        OrderedDict
            Description of the input and one entry per step with the
            corrupted counts and percentages of both models.
    """
    if steps < 0:
        raise DomainError('steps', steps, '[0, inf)')
    bits = cfg.bits_per_cell
    stored = bytes_to_symbols(matrix, bits)
    crossbar = CrossbarArray.from_levels(stored, cfg, isolated=False)
    isolated = CrossbarArray.from_levels(stored, cfg, isolated=True)
    total = stored.size

    report = OrderedDict()
    report['width_bytes'] = int(matrix.shape[1])
    report['height'] = int(matrix.shape[0])
    report['bits_per_symbol'] = bits
    report['symbols'] = total
    report['levels'] = list(cfg.levels)
    report['disturbance'] = cfg.disturbance
    report['decode_rule'] = cfg.decode_rule
    report['steps'] = []
    for step in range(steps + 1):
        if step:
            crossbar = disturbance_step(crossbar, stored, cfg)
            isolated = disturbance_step(isolated, stored, cfg)
        xbar = corrupted_count(crossbar, stored, cfg)
        iso = corrupted_count(isolated, stored, cfg)
        report['steps'].append(OrderedDict([('step', step),
                                            ('crossbar_corrupted', xbar),
                                            ('crossbar_corrupted_pct', 100.0 * xbar / total),
                                            ('isolated_corrupted', iso),
                                            ('isolated_corrupted_pct', 100.0 * iso / total)]))
        if miscutils.fwdebug_check(3, 'CROSSBAR_DEBUG'):
            miscutils.fwdebug_print("step %d: crossbar %d, isolated %d of %d" % (step, xbar, iso, total))
    return report
