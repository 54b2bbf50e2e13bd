"""
    .. _comet-photonics:

    **photonics**
    -------------

    Optical loss chains and the power model of a photonic memory:
    laser power from the worst-case loss chain, intra-subarray SOA count and
    power, and electro-optic MR tuning power.

    A loss chain is an ordered list of path elements. Losses count positive
    and amplifier gains negative, so the chain value is the net attenuation
    between the laser and the cell in dB.
"""

import math
from collections import OrderedDict
from dataclasses import dataclass, field, fields

import pcmmisc.miscutils as miscutils
from comet import cometdefs
from comet.exceptions import DomainError, ModelError

# path element kinds
COUPLER = 'coupler'
MR_THROUGH = 'mr_through'
MR_DROP = 'mr_drop'
EO_MR_DROP = 'eo_mr_drop'
EO_MR_THROUGH = 'eo_mr_through'
WAVEGUIDE = 'waveguide'
BEND = 'bend'
GST_SWITCH = 'gst_switch'
INTRA_SOA = 'intra_soa'
INTERFACE_SOA = 'interface_soa'
GST_CELL = 'gst_cell'

# kinds that take a count, a length (cm) or a gain (dB)
COUNTED = (MR_THROUGH, EO_MR_THROUGH, BEND, GST_CELL)
VALID_KINDS = (COUPLER, MR_THROUGH, MR_DROP, EO_MR_DROP, EO_MR_THROUGH,
               WAVEGUIDE, BEND, GST_SWITCH, INTRA_SOA, INTERFACE_SOA, GST_CELL)
AMPLIFIERS = (INTRA_SOA, INTERFACE_SOA)


@dataclass(frozen=True)
class LossParams:
    """ Optical loss atoms in dB (propagation in dB/cm) and amplifier gains """
    coupling_db: float = cometdefs.COUPLING_DB
    mr_drop_db: float = cometdefs.MR_DROP_DB
    mr_through_db: float = cometdefs.MR_THROUGH_DB
    eo_mr_drop_db: float = cometdefs.EO_MR_DROP_DB
    eo_mr_through_db: float = cometdefs.EO_MR_THROUGH_DB
    propagation_db_per_cm: float = cometdefs.PROPAGATION_DB_PER_CM
    bend_db_per_90: float = cometdefs.BEND_DB_PER_90
    gst_switch_db: float = cometdefs.GST_SWITCH_DB
    gst_cell_db: float = cometdefs.GST_CELL_DB
    interface_soa_gain_db: float = cometdefs.INTERFACE_SOA_GAIN_DB
    intra_soa_gain_db: float = cometdefs.INTRA_SOA_GAIN_DB
    max_net_gain_db: float = cometdefs.MAX_NET_GAIN_DB

    def __post_init__(self):
        for fld in fields(self):
            val = getattr(self, fld.name)
            if fld.name.endswith('gain_db'):
                if val <= 0:
                    raise DomainError(fld.name, val, '(0, inf)')
            elif val < 0:
                raise DomainError(fld.name, val, '[0, inf)')


@dataclass(frozen=True)
class PowerParams:
    """ Power constants of the photonic memory """
    p_eo_w_per_nm: float = cometdefs.P_EO_W_PER_NM
    tuning_shift_nm: float = cometdefs.TUNING_SHIFT_NM
    cell_power_crystalline_w: float = cometdefs.CELL_POWER_MW[cometdefs.RESET_CRYSTALLINE] * 1e-3
    cell_power_amorphous_w: float = cometdefs.CELL_POWER_MW[cometdefs.RESET_AMORPHOUS] * 1e-3
    intra_soa_power_w: float = cometdefs.INTRA_SOA_POWER_W
    wall_plug_efficiency: float = cometdefs.WALL_PLUG_EFFICIENCY

    def __post_init__(self):
        if not 0.0 < self.wall_plug_efficiency <= 1.0:
            raise DomainError('wall_plug_efficiency', self.wall_plug_efficiency, '(0, 1]')
        if self.tuning_shift_nm < 0:
            raise DomainError('tuning_shift_nm', self.tuning_shift_nm, '[0, inf)')
        for name in ('p_eo_w_per_nm', 'cell_power_crystalline_w', 'cell_power_amorphous_w',
                     'intra_soa_power_w'):
            if getattr(self, name) <= 0:
                raise DomainError(name, getattr(self, name), '(0, inf)')

    def cell_power_w(self, mode):
        """ Optical power that has to reach a cell for the reset mode """
        if mode == cometdefs.RESET_CRYSTALLINE:
            return self.cell_power_crystalline_w
        if mode == cometdefs.RESET_AMORPHOUS:
            return self.cell_power_amorphous_w
        raise DomainError('reset_mode', mode, str(cometdefs.VALID_RESET_MODES))


@dataclass(frozen=True)
class PathElement:
    """ One element of a loss chain

        value is the count for counted kinds, the length in cm for a
        waveguide, the gain in dB for an amplifier (None meaning the
        configured gain of that SOA kind), and unused otherwise.
    """
    kind: str
    value: float = 1

    def __post_init__(self):
        if self.kind not in VALID_KINDS:
            raise DomainError('path element', self.kind, str(VALID_KINDS))
        if self.value is not None and self.value < 0:
            raise DomainError('%s value' % self.kind, self.value, '[0, inf)')


#######################################################################
def parse_path(spec):
    """ Build a path descriptor from its configuration form

        Each item is either a bare kind ("coupler"), a two element list
        (["eo_mr_through", 46]), or a dict with 'kind' and 'value'. A bare
        amplifier ("intra_soa", "interface_soa") takes its configured gain.

        Parameters
        ----------
        spec : list
            The configured elements, in order.

        Returns
        -------
        tuple
            Tuple of PathElement.

        Raises
        ------
        DomainError
            If the path is empty or an element is not understood.
    """
    if not spec:
        raise DomainError('path', spec, 'non-empty element list')
    path = []
    for item in spec:
        if isinstance(item, str):
            kind = item.lower()
            path.append(PathElement(kind, None if kind in AMPLIFIERS else 1))
        elif isinstance(item, dict):
            kind = str(item['kind']).lower()
            path.append(PathElement(kind, _num(item.get('value', None if kind in AMPLIFIERS else 1))))
        elif isinstance(item, (list, tuple)) and len(item) == 2:
            path.append(PathElement(str(item[0]).lower(), _num(item[1])))
        else:
            raise DomainError('path element', item, 'kind, [kind, value] or {kind, value}')
    return tuple(path)


def _num(val):
    if val is None:
        return None
    return float(val)


#######################################################################
def element_db(elem, p):
    """ Net dB of one path element (gain negative) """
    kind = elem.kind
    val = elem.value
    if kind == COUPLER:
        return p.coupling_db
    if kind == MR_THROUGH:
        return val * p.mr_through_db
    if kind == MR_DROP:
        return p.mr_drop_db
    if kind == EO_MR_DROP:
        return p.eo_mr_drop_db
    if kind == EO_MR_THROUGH:
        return val * p.eo_mr_through_db
    if kind == WAVEGUIDE:
        return val * p.propagation_db_per_cm
    if kind == BEND:
        return val * p.bend_db_per_90
    if kind == GST_SWITCH:
        return p.gst_switch_db
    if kind == GST_CELL:
        return val * p.gst_cell_db
    if kind == INTERFACE_SOA:
        return -(p.interface_soa_gain_db if val is None else val)
    # INTRA_SOA
    return -(p.intra_soa_gain_db if val is None else val)


#######################################################################
def loss_chain_db(path, p):
    """ Net loss of a path

        Parameters
        ----------
        path : tuple
            PathElement items.

        p : LossParams
            Loss atoms.

        Returns
        -------
        float
            Sum of losses minus gains, in dB.
    """
    return math.fsum(element_db(elem, p) for elem in path)


#######################################################################
def laser_power_w(g, path, losses, power, mode=cometdefs.RESET_CRYSTALLINE, wavelengths=None):
    """ Electrical laser power needed to deliver the cell power on every
        wavelength across the worst-case path

        Parameters
        ----------
        g : MemoryGeometry
            Organization; N_c wavelengths are lit unless `wavelengths` is given.

        path : tuple
            Worst-case path.

        losses : LossParams
            Loss atoms.

        power : PowerParams
            Power constants.

        mode : str, optional
            Reset mode, selects the 1 mW or 5 mW cell power.

        wavelengths : int, optional
            Number of lit wavelengths, overriding N_c.

        Returns
        -------
        float
            Wall-plug (electrical) power in W.

        Raises
        ------
        ModelError
            If the path has more net gain than the amplifiers can deliver
            without saturating.
    """
    net_db = loss_chain_db(path, losses)
    if -net_db > losses.max_net_gain_db:
        raise ModelError('path has %.3f dB net gain, above the %.1f dB amplifier limit' %
                         (-net_db, losses.max_net_gain_db))
    count = g.total_cols if wavelengths is None else wavelengths
    per_wavelength = power.cell_power_w(mode) * 10.0 ** (net_db / 10.0)
    total = count * per_wavelength / power.wall_plug_efficiency
    if miscutils.fwdebug_check(3, 'PHOTONICS_DEBUG'):
        miscutils.fwdebug_print("net %.4f dB, %d wavelengths, laser %.6g W" % (net_db, count, total))
    return total


#######################################################################
def soa_count(g, interval):
    """ Intra-subarray SOAs in the chip, ceil(B x N_r x N_c / interval) """
    if interval < 1:
        raise DomainError('interval', interval, '[1, inf)')
    cells = g.banks * g.total_rows * g.total_cols
    return -(-cells // interval)


#######################################################################
def active_soa_power_w(g, interval, p):
    """ Power of the SOAs inside the accessed subarrays

        Only the subarray being accessed in each bank has its SOAs on:
        (B x M_r x M_c / interval) x P_SOA.
    """
    if interval < 1:
        raise DomainError('interval', interval, '[1, inf)')
    return g.banks * g.subarray_rows * g.subarray_cols / interval * p.intra_soa_power_w


#######################################################################
def eo_tuning_power_w(g, p):
    """ Power to hold 2 x M_c MRs per bank in resonance: B x 2 x M_c x P_EO x shift """
    return g.banks * 2 * g.subarray_cols * p.p_eo_w_per_nm * p.tuning_shift_nm


#######################################################################
def passive_mr_count(g):
    """ Passive access/readout MRs on the WDM-MDM link, 2 x B x N_c """
    return 2 * g.banks * g.total_cols


#######################################################################
def comet_worst_case_path(g, losses, die_length_cm=cometdefs.DIE_LENGTH_CM,
                          interval=cometdefs.SOA_INTERVAL_ROWS, bends=cometdefs.DEFAULT_BENDS):
    """ Worst-case laser-to-detector path through a COMET subarray

        coupler -> GST subarray switch -> column waveguide -> EO-MR drop ->
        M_r EO-MR throughs with an SOA every `interval` rows -> EO-MR drop
        -> coupler. Each SOA restores what the preceding rows took, up to
        the SOA's gain.

        Parameters
        ----------
        g : MemoryGeometry
            Organization, supplies M_r.

        losses : LossParams
            Loss atoms.

        die_length_cm : float, optional
            Column waveguide length. Default 2 cm.

        interval : int, optional
            Rows between SOA arrays. Default 46.

        bends : int, optional
            90 degree bends along the waveguide. Default 4.

        Returns
        -------
        tuple
            PathElement items.
    """
    soa_gain = min(interval * losses.eo_mr_through_db, losses.intra_soa_gain_db)
    path = [PathElement(COUPLER),
            PathElement(GST_SWITCH),
            PathElement(WAVEGUIDE, die_length_cm),
            PathElement(BEND, bends),
            PathElement(EO_MR_DROP),
            PathElement(EO_MR_THROUGH, g.subarray_rows)]
    path.extend([PathElement(INTRA_SOA, soa_gain)] * (g.subarray_rows // interval))
    path.extend([PathElement(EO_MR_DROP),
                 PathElement(COUPLER)])
    return tuple(path)


#######################################################################
def power_stack(g, path, losses, power, mode=cometdefs.RESET_CRYSTALLINE,
                interval=cometdefs.SOA_INTERVAL_ROWS):
    """ Power breakdown of a COMET chip

        Parameters
        ----------
        g : MemoryGeometry
            Organization.

        path : tuple
            Worst-case path for the laser budget.

        losses : LossParams
            Loss atoms.

        power : PowerParams
            Power constants.

        mode : str, optional
            Reset mode.

        interval : int, optional
            SOA interval in rows.

        Returns
        -------
        OrderedDict
            laser_w, soa_w, eo_tuning_w, total_w and the assumed
            tuning_shift_nm.
    """
    stack = OrderedDict()
    stack['laser_w'] = laser_power_w(g, path, losses, power, mode)
    stack['soa_w'] = active_soa_power_w(g, interval, power)
    stack['eo_tuning_w'] = eo_tuning_power_w(g, power)
    stack['total_w'] = math.fsum([stack['laser_w'], stack['soa_w'], stack['eo_tuning_w']])
    stack['tuning_shift_nm'] = power.tuning_shift_nm
    return stack


@dataclass(frozen=True)
class PhotonicsParams:
    """ Everything the simulators need from the optical model

        Parameters
        ----------
        losses : LossParams
            Loss atoms.

        power : PowerParams
            Power constants.

        path : tuple, optional
            Worst-case path. Default is comet_worst_case_path of the
            simulated geometry.

        soa_interval : int, optional
            Rows between intra-subarray SOAs. Default 46.

        soa_gain_db : float, optional
            Gain of each intra-subarray SOA as used by the integrity check.
            Default restores exactly the loss of one interval.

        die_length_cm : float, optional
            Column waveguide length of the default path.

        bends : int, optional
            90 degree bends of the default path.
    """
    losses: LossParams = field(default_factory=LossParams)
    power: PowerParams = field(default_factory=PowerParams)
    path: tuple = None
    soa_interval: int = cometdefs.SOA_INTERVAL_ROWS
    soa_gain_db: float = None
    die_length_cm: float = cometdefs.DIE_LENGTH_CM
    bends: int = cometdefs.DEFAULT_BENDS

    def worst_case_path(self, g):
        """ The configured path, or the default COMET path for g """
        if self.path is not None:
            return self.path
        return comet_worst_case_path(g, self.losses, self.die_length_cm, self.soa_interval, self.bends)

    def stack(self, g, mode=cometdefs.RESET_CRYSTALLINE):
        """ power_stack of g under these parameters """
        return power_stack(g, self.worst_case_path(g), self.losses, self.power, mode, self.soa_interval)
