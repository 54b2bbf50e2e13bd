"""
    .. _comet-pcm-cell:

    **pcm_cell**
    ------------

    Optical model of the GST multi-level cell.

    The cell's effective permittivity for a partly crystallized volume is
    taken from Lorentz-Lorenz mixing of the amorphous and crystalline
    permittivities::

        (e_eff - 1)/(e_eff + 2) = f_c (e_c - 1)/(e_c + 2) + (1 - f_c)(e_a - 1)/(e_a + 2)

    A 4-bit cell uses 16 equally spaced transmission levels
    T_i = 0.95 - 0.06 i. Lower bit densities use an equally spaced subset of
    the same ladder. Level i has crystalline fraction i/15: level 0 is fully
    amorphous, level 15 fully crystalline.

    Material permittivities are inputs. The values in DEFAULT_EPS_AMORPHOUS
    and DEFAULT_EPS_CRYSTALLINE are placeholders so that the functions can
    be exercised; supply measured GST values for any real study.
"""

import cmath
import math
from collections import OrderedDict
from dataclasses import dataclass

import numpy as np
from scipy import optimize

import pcmmisc.miscutils as miscutils
from comet import cometdefs
from comet.exceptions import DomainError, DecodeError, LevelTableSchemaError

# placeholders, not measured material data
DEFAULT_EPS_AMORPHOUS = complex(16.0, 1.0)
DEFAULT_EPS_CRYSTALLINE = complex(36.0, 16.0)


@dataclass(frozen=True)
class ComplexIndex:
    """ Complex refractive index n + i kappa """
    n: float
    kappa: float = 0.0

    def __post_init__(self):
        if self.n <= 0:
            raise DomainError('n', self.n, '(0, inf)')
        if self.kappa < 0:
            raise DomainError('kappa', self.kappa, '[0, inf)')

    def to_permittivity(self):
        """ Return the complex permittivity (n + i kappa)**2 """
        return complex(self.n, self.kappa) ** 2

    @classmethod
    def from_permittivity(cls, eps):
        """ Build the index whose square is eps (principal root) """
        root = cmath.sqrt(complex(eps))
        return cls(root.real, abs(root.imag))


@dataclass(frozen=True)
class CellState:
    """ Programmed state of one cell """
    level: int
    crystalline_fraction: float
    transmission: float


@dataclass(frozen=True)
class LevelRow:
    """ One level of a level table """
    level: int
    transmission: float
    crystalline_fraction: float
    program_ns: float
    program_pj: float


@dataclass(frozen=True)
class LevelTable:
    """ Levels of a b-bit cell together with its reset characteristics

        Rows are ordered by level index; level 0 has the highest
        transmission.
    """
    bits: int
    mode: str
    rows: tuple
    reset_energy_pj: float
    reset_latency_ns: float

    @property
    def size(self):
        """ Number of levels, 2**b """
        return len(self.rows)

    @property
    def transmissions(self):
        """ Nominal transmissions as a numpy array, by level """
        return np.array([row.transmission for row in self.rows])

    @property
    def max_program_ns(self):
        """ Program latency of the slowest level """
        return max(row.program_ns for row in self.rows)

    def row(self, level):
        """ Return the LevelRow for a level index

            Raises
            ------
            DomainError
                If the level is not in the table.
        """
        if level < 0 or level >= len(self.rows):
            raise DomainError('level', level, '[0, %d)' % len(self.rows))
        return self.rows[level]

    def farthest_level(self):
        """ The level with the longest program latency """
        return max(self.rows, key=lambda r: (r.program_ns, r.level)).level


def _check_fraction(f_c):
    if not 0.0 <= f_c <= 1.0:
        raise DomainError('f_c', f_c, '[0, 1]')


def _lorenz_term(eps):
    return (eps - 1.0) / (eps + 2.0)


#######################################################################
def effective_permittivity(f_c, eps_a, eps_c):
    """ Lorentz-Lorenz effective permittivity of a partly crystallized cell

        Parameters
        ----------
        f_c : float
            Crystalline fraction in [0, 1].

        eps_a : complex
            Permittivity of the amorphous phase.

        eps_c : complex
            Permittivity of the crystalline phase.

        Returns
        -------
        complex
            The effective permittivity. The pure phases are returned
            unchanged at f_c = 0 and f_c = 1.

        Raises
        ------
        DomainError
            If f_c is outside [0, 1] or a permittivity has a non-positive
            real part.
    """
    _check_fraction(f_c)
    eps_a = complex(eps_a)
    eps_c = complex(eps_c)
    for name, eps in (('eps_a', eps_a), ('eps_c', eps_c)):
        if eps.real <= 0:
            raise DomainError(name, eps, 'Re > 0')

    if f_c == 0.0:
        return eps_a
    if f_c == 1.0:
        return eps_c

    mix = f_c * _lorenz_term(eps_c) + (1.0 - f_c) * _lorenz_term(eps_a)
    return (1.0 + 2.0 * mix) / (1.0 - mix)


#######################################################################
def effective_index(f_c, idx_a, idx_c):
    """ Effective complex index for a crystalline fraction

        Parameters
        ----------
        f_c : float
            Crystalline fraction in [0, 1].

        idx_a, idx_c : ComplexIndex
            Indices of the amorphous and crystalline phases.

        Returns
        -------
        ComplexIndex
    """
    eps = effective_permittivity(f_c, idx_a.to_permittivity(), idx_c.to_permittivity())
    return ComplexIndex.from_permittivity(eps)


#######################################################################
def crystalline_fraction_for_index(n_target, eps_a, eps_c):
    """ Crystalline fraction giving a target real effective index

        Parameters
        ----------
        n_target : float
            The real part of the effective index to reach.

        eps_a, eps_c : complex
            Permittivities of the two phases.

        Returns
        -------
        float
            f_c in [0, 1].

        Raises
        ------
        DomainError
            If n_target is not between the indices of the pure phases.
    """
    def resid(f_c):
        return cmath.sqrt(effective_permittivity(f_c, eps_a, eps_c)).real - n_target

    low = resid(0.0)
    high = resid(1.0)
    if low == 0.0:
        return 0.0
    if high == 0.0:
        return 1.0
    if low * high > 0:
        raise DomainError('n_target', n_target, 'between %.6g and %.6g' % (low + n_target,
                                                                           high + n_target))
    return optimize.brentq(resid, 0.0, 1.0, xtol=1e-14)


#######################################################################
def ladder_transmission(index):
    """ Transmission of rung `index` of the 16-level ladder """
    return cometdefs.LADDER_TOP - index * cometdefs.LADDER_SPACING


def _reset_rung(mode):
    """ Ladder rung the cell sits at after a reset """
    if mode == cometdefs.RESET_CRYSTALLINE:
        return cometdefs.LADDER_LEVELS - 1
    return 0


#######################################################################
def build_level_table(bits, mode=cometdefs.RESET_CRYSTALLINE, overrides=None,
                      reset_latency_ns=cometdefs.ERASE_NS, max_write_ns=cometdefs.MAX_WRITE_NS):
    """ Build the level table of a b-bit cell

        The 2**b levels are an equally spaced subset of the 16-rung ladder,
        always including both extremes. Unless overridden, program latency
        ramps linearly with ladder distance from the reset state, from 10 ns
        up to the maximum write time, and program energy is the incident
        power of the reset mode (1 mW or 5 mW) times that latency.

        Parameters
        ----------
        bits : int
            Bits per cell, 1, 2 or 4.

        mode : str, optional
            'crystalline-reset' (default) or 'amorphous-reset'.

        overrides : list, optional
            One dict per level, in level order, with 'latency_ns' and
            optionally 'energy_pj', 'level' and 'transmission' (the latter
            must repeat the ladder value).

        reset_latency_ns : float, optional
            Latency of the reset (erase) pulse. Default 210 ns.

        max_write_ns : float, optional
            Program latency of the level farthest from the reset state, and
            the largest latency an override may give. Default 170 ns.

        Returns
        -------
        LevelTable

        Raises
        ------
        DomainError
            If bits or mode are not supported, or if max_write_ns is below
            the 10 ns shortest program pulse.

        LevelTableSchemaError
            If the overrides do not describe exactly 2**b valid levels.
    """
    if bits not in cometdefs.VALID_BITS_PER_CELL:
        raise DomainError('bits_per_cell', bits, str(cometdefs.VALID_BITS_PER_CELL))
    if mode not in cometdefs.VALID_RESET_MODES:
        raise DomainError('reset_mode', mode, str(cometdefs.VALID_RESET_MODES))
    if max_write_ns < cometdefs.MIN_PROGRAM_NS:
        raise DomainError('max_write_ns', max_write_ns, '[%g, inf)' % cometdefs.MIN_PROGRAM_NS)

    nlevels = 2 ** bits
    step = (cometdefs.LADDER_LEVELS - 1) // (nlevels - 1)
    rungs = [i * step for i in range(nlevels)]
    reset_rung = _reset_rung(mode)
    power_mw = cometdefs.CELL_POWER_MW[mode]
    span = cometdefs.LADDER_LEVELS - 1

    if overrides is not None and len(overrides) != nlevels:
        raise LevelTableSchemaError('%d rows given for a %d-level cell' % (len(overrides), nlevels))

    rows = []
    for level, rung in enumerate(rungs):
        trans = ladder_transmission(rung)
        dist = abs(rung - reset_rung)
        latency = cometdefs.MIN_PROGRAM_NS + (max_write_ns - cometdefs.MIN_PROGRAM_NS) * dist / span
        energy = None

        if overrides is not None:
            latency, energy = _apply_override(overrides[level], level, trans, max_write_ns)
        if energy is None:
            energy = power_mw * latency   # mW x ns = pJ

        rows.append(LevelRow(level=level, transmission=trans, crystalline_fraction=rung / span,
                             program_ns=float(latency), program_pj=float(energy)))

    table = LevelTable(bits=bits, mode=mode, rows=tuple(rows),
                       reset_energy_pj=cometdefs.RESET_ENERGY_PJ[mode],
                       reset_latency_ns=float(reset_latency_ns))
    if miscutils.fwdebug_check(3, 'PCMCELL_DEBUG'):
        miscutils.fwdebug_print("built %d-level table, mode %s" % (nlevels, mode))
    return table


def _apply_override(entry, level, trans, max_write_ns):
    """ Validate one override row, returning (latency, energy or None) """
    if 'level' in entry and int(entry['level']) != level:
        raise LevelTableSchemaError('row %d is labeled level %s' % (level, entry['level']))
    if 'transmission' in entry and abs(float(entry['transmission']) - trans) > 1e-6:
        raise LevelTableSchemaError('level %d transmission %s does not match the ladder value %.2f' %
                                    (level, entry['transmission'], trans))
    if 'latency_ns' not in entry:
        raise LevelTableSchemaError('level %d has no latency_ns' % level)

    latency = float(entry['latency_ns'])
    if latency <= 0 or latency > max_write_ns:
        raise LevelTableSchemaError('level %d latency %s ns outside (0, %s]' %
                                    (level, latency, max_write_ns))
    energy = None
    if 'energy_pj' in entry:
        energy = float(entry['energy_pj'])
        if energy < 0:
            raise LevelTableSchemaError('level %d energy %s pJ is negative' % (level, energy))
    return latency, energy


#######################################################################
def load_level_overrides(filename):
    """ Read a level-table override file

        The file is JSON or WCL and holds a 'levels' section, either a list
        of rows or a section per level index, each row carrying
        'latency_ns' and optionally 'energy_pj' and 'transmission'.

        Parameters
        ----------
        filename : str
            The file to read.

        Returns
        -------
        list
            Rows in level order, suitable for build_level_table.
    """
    from pcmconfig.wcl import WCL

    wcl = WCL.from_file(filename)
    levels = wcl.get('levels')
    if levels is None:
        raise LevelTableSchemaError("no 'levels' section in %s" % filename)
    if isinstance(levels, dict):
        try:
            keyed = sorted(levels.items(), key=lambda kv: int(kv[0]))
        except ValueError:
            raise LevelTableSchemaError("level sections in %s must be integers" % filename)
        rows = []
        for key, row in keyed:
            row = OrderedDict(row)
            row.setdefault('level', key)
            rows.append(row)
        return rows
    return [OrderedDict(row) for row in levels]


#######################################################################
def encode_symbol(value, table):
    """ Cell state storing a symbol value

        Parameters
        ----------
        value : int
            Symbol in [0, 2**b).

        table : LevelTable
            Level table of the cell.

        Returns
        -------
        CellState

        Raises
        ------
        DomainError
            If the value does not fit in the cell.
    """
    if value < 0 or value >= table.size:
        raise DomainError('value', value, '[0, %d)' % table.size)
    row = table.rows[value]
    return CellState(level=row.level, crystalline_fraction=row.crystalline_fraction,
                     transmission=row.transmission)


#######################################################################
def decode_transmission(t_measured, table, guard_band=cometdefs.DECODE_GUARD_BAND,
                        overshoot=cometdefs.DECODE_OVERSHOOT):
    """ Symbol value for a measured transmission

        Decision boundaries sit halfway between adjacent nominal levels. A
        readout strictly closer than guard_band to a boundary is refused.

        Parameters
        ----------
        t_measured : float
            Measured (gain restored) transmission.

        table : LevelTable
            Level table of the cell.

        guard_band : float, optional
            Half width of the refused zone around each boundary. Default 0.01.

        overshoot : float, optional
            Amplifier overshoot tolerated above a transmission of 1.
            Default 0.05.

        Returns
        -------
        int
            The decoded symbol value.

        Raises
        ------
        DomainError
            If the readout is outside [0, 1 + overshoot].

        DecodeError
            If the readout lies inside a guard band.
    """
    if not 0.0 <= t_measured <= 1.0 + overshoot:
        raise DomainError('t_measured', t_measured, '[0, %g]' % (1.0 + overshoot))

    trans = table.transmissions
    nearest = int(np.argmin(np.abs(trans - t_measured)))

    for other in (nearest - 1, nearest + 1):
        if 0 <= other < len(trans):
            boundary = 0.5 * (trans[nearest] + trans[other])
            if abs(t_measured - boundary) < guard_band:
                raise DecodeError(t_measured, tuple(sorted((table.rows[nearest].level,
                                                            table.rows[other].level))))
    return table.rows[nearest].level


#######################################################################
def transition_cost(from_level, to_level, table):
    """ Energy and latency of rewriting a cell

        Writes are blind: the cell is always reset and then programmed to
        the target, also when it already holds the target level.

        Parameters
        ----------
        from_level, to_level : int
            Current and target levels.

        table : LevelTable
            Level table of the cell.

        Returns
        -------
        tuple
            (energy in pJ, latency in ns)
    """
    table.row(from_level)
    target = table.row(to_level)
    return (table.reset_energy_pj + target.program_pj,
            table.reset_latency_ns + target.program_ns)


#######################################################################
def wavelength_loss(lambda_nm):
    """ Propagation loss of the cell waveguide across the C-band

        Parameters
        ----------
        lambda_nm : float
            Wavelength in nm, within 1530-1565.

        Returns
        -------
        float
            Loss in dB/mm, linear between 0.073 (1530 nm) and 0.067 (1565 nm).

        Raises
        ------
        DomainError
            If the wavelength is outside the C-band.
    """
    if not cometdefs.CBAND_LOW_NM <= lambda_nm <= cometdefs.CBAND_HIGH_NM:
        raise DomainError('lambda_nm', lambda_nm, '[%g, %g]' % (cometdefs.CBAND_LOW_NM,
                                                                cometdefs.CBAND_HIGH_NM))
    slope = ((cometdefs.CBAND_LOSS_HIGH_DB_PER_MM - cometdefs.CBAND_LOSS_LOW_DB_PER_MM) /
             (cometdefs.CBAND_HIGH_NM - cometdefs.CBAND_LOW_NM))
    return cometdefs.CBAND_LOSS_LOW_DB_PER_MM + slope * (lambda_nm - cometdefs.CBAND_LOW_NM)


#######################################################################
def cell_insertion_loss_db(transmission):
    """ Insertion loss of a cell in dB, -10 log10(T) """
    if not 0.0 < transmission <= 1.0:
        raise DomainError('transmission', transmission, '(0, 1]')
    return -10.0 * math.log10(transmission)
