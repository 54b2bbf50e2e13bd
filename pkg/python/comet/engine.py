"""
    .. _comet-engine:

    **engine**
    ----------

    Deterministic event-driven simulation of memory request traces.

    Requests arrive from a trace, are cut into cache lines, and each line is
    queued FIFO on the bank it interleaves to. MemorySimulator owns the
    event loop, the bank states and the statistics; a subclass supplies the
    address decomposition, the array access sequence and the power model of
    one architecture. CometSimulator models COMET: a READ selects the
    subarray through the GST switch, EO-tunes the row MRs, fires the read
    pulse and bursts the line out; a WRITE erases and programs the line.

    Trace grammar, one request per line, '#' starting a comment::

        <time_ns> <R|W> <hex_address> [<size_bytes> [<level>]]
"""

import heapq
import itertools
import math
import re
from collections import OrderedDict
from dataclasses import dataclass, field

import numpy as np
import psutil

import pcmmisc.miscutils as miscutils
from comet import cometdefs
from comet import geometry as geo
from comet import integrity
from comet import photonics
from comet.exceptions import DomainError, TraceSyntaxError, TraceOrderError

ARRIVE = 0
COMPLETE = 1


@dataclass(frozen=True)
class TimingParams:
    """ Array timing in ns, the access policy, and the data bus """
    read_ns: float = cometdefs.READ_NS
    max_write_ns: float = cometdefs.MAX_WRITE_NS
    erase_ns: float = cometdefs.ERASE_NS
    burst_ns: float = cometdefs.BURST_NS
    interface_ns: float = cometdefs.INTERFACE_NS
    eo_tune_ns: float = cometdefs.EO_TUNE_NS
    gst_switch_ns: float = cometdefs.GST_SWITCH_NS
    bus_width_bits: int = cometdefs.BUS_WIDTH_BITS
    burst_length: int = cometdefs.BURST_LENGTH
    policy: str = cometdefs.POLICY_OPEN
    interface_holds_bank: bool = False

    def __post_init__(self):
        for name in ('read_ns', 'max_write_ns', 'erase_ns', 'burst_ns', 'interface_ns',
                     'eo_tune_ns', 'gst_switch_ns'):
            if getattr(self, name) < 0:
                raise DomainError(name, getattr(self, name), '[0, inf)')
        if self.bus_width_bits < 1 or self.burst_length < 1:
            raise DomainError('bus_width_bits x burst_length', (self.bus_width_bits, self.burst_length),
                              'positive integers')
        if self.policy not in cometdefs.VALID_POLICIES:
            raise DomainError('policy', self.policy, str(cometdefs.VALID_POLICIES))
        if self.max_write_ns < cometdefs.MIN_PROGRAM_NS:
            raise DomainError('max_write_ns', self.max_write_ns, '[%g, inf)' % cometdefs.MIN_PROGRAM_NS)

    def burst_length_for(self, line_bytes):
        """ Bursts per cache line; the configured burst_length covers one
            bus_width_bits x burst_length line and scales with other sizes
        """
        line_bits = line_bytes * 8
        if line_bits % self.bus_width_bits:
            raise DomainError('line_bytes', line_bytes, 'multiple of the %d bit bus' % self.bus_width_bits)
        return line_bits // self.bus_width_bits


@dataclass(frozen=True)
class TraceRequest:
    """ One memory request; size None means one cache line and level None
        the level farthest from the reset state
    """
    time_ns: float
    op: str
    address: int
    size: int = None
    level: int = None


@dataclass
class BankState:
    """ Open subarray and row of a bank, and when it is free again """
    subarray: object = None
    row: object = None
    busy_until: float = 0.0
    busy_ns: float = 0.0


@dataclass(frozen=True)
class LineLocation:
    """ Where a cache line lives: bank key, subarray key, row in the subarray """
    bank: tuple
    subarray: tuple
    row: int


@dataclass(frozen=True)
class Access:
    """ Result of servicing one line on its bank """
    busy_ns: float
    energy_pj: float = 0.0
    switched: bool = False
    tuned: bool = False
    decode_error: bool = False


@dataclass
class SimStats:
    """ Statistics of one simulation

        Units are in the field names. energy_pj holds one entry per
        component of cometdefs.ENERGY_COMPONENTS.
    """
    arch: str = cometdefs.ARCH_COMET
    requests: int = 0
    reads: int = 0
    writes: int = 0
    bits_read: int = 0
    bits_written: int = 0
    span_ns: float = 0.0
    latency_avg_ns: float = 0.0
    latency_p50_ns: float = 0.0
    latency_p95_ns: float = 0.0
    latency_p99_ns: float = 0.0
    latency_max_ns: float = 0.0
    read_latency_avg_ns: float = 0.0
    write_latency_avg_ns: float = 0.0
    bandwidth_bytes_per_s: float = 0.0
    energy_pj: OrderedDict = field(default_factory=OrderedDict)
    energy_total_pj: float = 0.0
    epb_pj_per_bit: float = 0.0
    bw_per_epb: float = 0.0
    decode_errors: int = 0
    subarray_switches: int = 0
    row_tunes: int = 0
    power_timeline: list = None

    @property
    def total_bits(self):
        """ Bits moved in either direction """
        return self.bits_read + self.bits_written

    def as_dict(self):
        """ Flat ordered dict for reports (the timeline is left out) """
        out = OrderedDict()
        for name in ('arch', 'requests', 'reads', 'writes', 'bits_read', 'bits_written'):
            out[name] = getattr(self, name)
        out['total_bits'] = self.total_bits
        for name in ('span_ns', 'latency_avg_ns', 'latency_p50_ns', 'latency_p95_ns',
                     'latency_p99_ns', 'latency_max_ns', 'read_latency_avg_ns',
                     'write_latency_avg_ns', 'bandwidth_bytes_per_s'):
            out[name] = getattr(self, name)
        for comp in cometdefs.ENERGY_COMPONENTS:
            out['energy_%s_pj' % comp] = self.energy_pj.get(comp, 0.0)
        for name in ('energy_total_pj', 'epb_pj_per_bit', 'bw_per_epb', 'decode_errors',
                     'subarray_switches', 'row_tunes'):
            out[name] = getattr(self, name)
        return out


#######################################################################
_TOKEN = re.compile(r'\S+')


def _parse_int(tok, base, lineno, column, text, what):
    try:
        val = int(tok, base)
    except ValueError:
        raise TraceSyntaxError(lineno, column, text, 'bad %s %r' % (what, tok))
    if val < 0:
        raise TraceSyntaxError(lineno, column, text, 'negative %s' % what)
    return val


def parse_trace(lines):
    """ Parse trace text into requests

        Parameters
        ----------
        lines : iterable
            Lines of a trace (a list of strings or an open file).

        Returns
        -------
        list
            TraceRequest items in file order.

        Raises
        ------
        TraceSyntaxError
            For a line that does not match the grammar, with its line number
            and the column of the bad field.

        TraceOrderError
            If an arrival time is earlier than the previous one.
    """
    requests = []
    previous = None
    for lineno, raw in enumerate(lines, 1):
        text = raw.rstrip('\n')
        body = text.split('#', 1)[0]
        toks = [(m.group(0), m.start() + 1) for m in _TOKEN.finditer(body)]
        if not toks:
            continue
        if len(toks) < 3:
            raise TraceSyntaxError(lineno, len(body.rstrip()) + 1, text,
                                   'expected <time_ns> <R|W> <hex_address>')
        if len(toks) > 5:
            raise TraceSyntaxError(lineno, toks[5][1], text, 'too many fields')

        tok, col = toks[0]
        try:
            time_ns = float(tok)
        except ValueError:
            raise TraceSyntaxError(lineno, col, text, 'bad time %r' % tok)
        if not math.isfinite(time_ns) or time_ns < 0:
            raise TraceSyntaxError(lineno, col, text, 'time must be finite and >= 0')

        tok, col = toks[1]
        op = tok.upper()
        if op not in cometdefs.VALID_OPS:
            raise TraceSyntaxError(lineno, col, text, 'op must be R or W, got %r' % tok)

        tok, col = toks[2]
        address = _parse_int(tok, 16, lineno, col, text, 'hex address')

        size = None
        if len(toks) > 3:
            size = _parse_int(toks[3][0], 10, lineno, toks[3][1], text, 'size')
            if size == 0:
                raise TraceSyntaxError(lineno, toks[3][1], text, 'size must be positive')
        level = None
        if len(toks) > 4:
            level = _parse_int(toks[4][0], 10, lineno, toks[4][1], text, 'level')

        if previous is not None and time_ns < previous:
            raise TraceOrderError(lineno, time_ns, previous)
        previous = time_ns
        requests.append(TraceRequest(time_ns, op, address, size, level))

    if miscutils.fwdebug_check(3, 'ENGINE_DEBUG'):
        miscutils.fwdebug_print("parsed %d requests" % len(requests))
    return requests


def read_trace(filename):
    """ Parse a trace file """
    with open(filename, 'r') as infh:
        return parse_trace(infh)


def _fmt_time(time_ns):
    if float(time_ns).is_integer():
        return str(int(time_ns))
    return repr(float(time_ns))


def write_trace(requests, out_file, line_bytes=cometdefs.DEFAULT_LINE_BYTES):
    """ Write requests in the trace grammar, one per line; a level without
        a size is written with a size of one line
    """
    for req in requests:
        fields_ = [_fmt_time(req.time_ns), req.op, '0x%x' % req.address]
        if req.size is not None or req.level is not None:
            fields_.append(str(req.size if req.size is not None else line_bytes))
        if req.level is not None:
            fields_.append(str(req.level))
        print(' '.join(fields_), file=out_file)


#######################################################################
class MemorySimulator:
    """ Event loop, bank queues and statistics shared by the architectures

        Parameters
        ----------
        line_bytes : int
            Cache line size; requests are cut into lines.

        interface_ns : float
            Electrical interface delay added to every line.

        interface_holds_bank : bool
            Whether the bank stays busy through the interface delay.

        timeline_ns : float, optional
            Bucket width of the power timeline. None skips the timeline.
    """
    arch = None

    def __init__(self, line_bytes, interface_ns, interface_holds_bank=False, timeline_ns=None):
        if line_bytes not in cometdefs.VALID_LINE_BYTES:
            raise DomainError('line_bytes', line_bytes, str(cometdefs.VALID_LINE_BYTES))
        if timeline_ns is not None and timeline_ns <= 0:
            raise DomainError('timeline_ns', timeline_ns, '(0, inf)')
        self.line_bytes = line_bytes
        self.interface_ns = interface_ns
        self.interface_holds_bank = interface_holds_bank
        self.timeline_ns = timeline_ns
        self.banks = {}

    ######################################################################
    def static_power_w(self):
        """ Components drawn for the whole span, component -> W """
        raise NotImplementedError

    def busy_power_w(self):
        """ Components drawn by one bank while it is busy, component -> W """
        raise NotImplementedError

    def locate(self, address):
        """ LineLocation of the line holding a byte address """
        raise NotImplementedError

    def service(self, bank, op, loc, level):
        """ Service one line on a bank, updating its open subarray/row """
        raise NotImplementedError

    ######################################################################
    def _bank(self, key):
        if key not in self.banks:
            self.banks[key] = BankState()
        return self.banks[key]

    def _dispatch(self, req, stats, intervals, pulses):
        """ Queue every line of a request on its bank, returning the
            completion time of the slowest line
        """
        size = self.line_bytes if req.size is None else req.size
        first = req.address // self.line_bytes
        last = (req.address + size - 1) // self.line_bytes
        done = req.time_ns
        for line in range(first, last + 1):
            loc = self.locate(line * self.line_bytes)
            bank = self._bank(loc.bank)
            start = max(req.time_ns, bank.busy_until)
            acc = self.service(bank, req.op, loc, req.level)

            hold = acc.busy_ns + (self.interface_ns if self.interface_holds_bank else 0.0)
            bank.busy_until = start + hold
            bank.busy_ns += acc.busy_ns
            finish = start + acc.busy_ns + self.interface_ns
            done = max(done, finish)

            stats.subarray_switches += int(acc.switched)
            stats.row_tunes += int(acc.tuned)
            stats.decode_errors += int(acc.decode_error)
            stats.energy_pj[cometdefs.E_WRITE] += acc.energy_pj
            if intervals is not None:
                intervals.append((start, start + acc.busy_ns))
                if acc.energy_pj:
                    pulses.append((start + acc.busy_ns, acc.energy_pj))
        return done

    ######################################################################
    def run(self, trace):
        """ Simulate a trace

            Parameters
            ----------
            trace : iterable
                TraceRequest items with nondecreasing arrival times.

            Returns
            -------
            SimStats
        """
        stats = SimStats(arch=self.arch)
        stats.energy_pj = OrderedDict((comp, 0.0) for comp in cometdefs.ENERGY_COMPONENTS)
        intervals = [] if self.timeline_ns else None
        pulses = [] if self.timeline_ns else None

        seq = itertools.count()
        events = []
        for req in trace:
            heapq.heappush(events, (req.time_ns, next(seq), ARRIVE, req))

        latencies = []
        read_lat = []
        write_lat = []
        t_first = None
        t_last = 0.0
        while events:
            now, _, kind, payload = heapq.heappop(events)
            if kind == ARRIVE:
                if t_first is None:
                    t_first = now
                done = self._dispatch(payload, stats, intervals, pulses)
                heapq.heappush(events, (done, next(seq), COMPLETE, payload))
                continue

            req = payload
            lat = now - req.time_ns
            latencies.append(lat)
            bits = 8 * (self.line_bytes if req.size is None else req.size)
            if req.op == cometdefs.OP_READ:
                stats.reads += 1
                stats.bits_read += bits
                read_lat.append(lat)
            else:
                stats.writes += 1
                stats.bits_written += bits
                write_lat.append(lat)
            t_last = max(t_last, now)

        stats.requests = len(latencies)
        if not latencies:
            return stats

        stats.span_ns = t_last - t_first
        lat = np.array(latencies)
        stats.latency_avg_ns = float(np.mean(lat))
        stats.latency_p50_ns, stats.latency_p95_ns, stats.latency_p99_ns = \
            (float(v) for v in np.percentile(lat, [50, 95, 99]))
        stats.latency_max_ns = float(np.max(lat))
        stats.read_latency_avg_ns = float(np.mean(read_lat)) if read_lat else 0.0
        stats.write_latency_avg_ns = float(np.mean(write_lat)) if write_lat else 0.0

        # W x ns = 1e3 pJ
        busy_total = math.fsum(bank.busy_ns for bank in self.banks.values())
        for comp, watts in self.static_power_w().items():
            stats.energy_pj[comp] += watts * stats.span_ns * 1e3
        for comp, watts in self.busy_power_w().items():
            stats.energy_pj[comp] += watts * busy_total * 1e3
        stats.energy_total_pj = math.fsum(stats.energy_pj.values())

        if stats.span_ns > 0:
            stats.bandwidth_bytes_per_s = stats.total_bits / 8.0 / (stats.span_ns * 1e-9)
        stats.epb_pj_per_bit = stats.energy_total_pj / stats.total_bits
        if stats.epb_pj_per_bit > 0:
            stats.bw_per_epb = stats.bandwidth_bytes_per_s / stats.epb_pj_per_bit

        if self.timeline_ns:
            stats.power_timeline = self._timeline(t_first, stats.span_ns, intervals, pulses)

        if miscutils.fwdebug_check(1, 'ENGINE_DEBUG'):
            miscutils.fwdebug_print("%s: %d requests over %.1f ns, %.4g B/s, %.4g pJ/bit" %
                                    (self.arch, stats.requests, stats.span_ns,
                                     stats.bandwidth_bytes_per_s, stats.epb_pj_per_bit))
        return stats

    ######################################################################
    def _timeline(self, t_first, span_ns, intervals, pulses):
        """ Average power per bucket as [bucket start ns, W] pairs """
        width = self.timeline_ns
        nbins = max(1, int(math.ceil(span_ns / width)))
        busy = np.zeros(nbins)
        for start, end in intervals:
            lo = start - t_first
            hi = end - t_first
            for k in range(int(lo // width), min(int(hi // width), nbins - 1) + 1):
                busy[k] += max(0.0, min(hi, (k + 1) * width) - max(lo, k * width))
        pulse = np.zeros(nbins)
        for when, energy in pulses:
            pulse[min(int((when - t_first) // width), nbins - 1)] += energy

        static = math.fsum(self.static_power_w().values())
        per_bank = math.fsum(self.busy_power_w().values())
        # pJ / ns = 1e-3 W
        power = static + per_bank * busy / width + pulse * 1e-3 / width
        return [[t_first + k * width, float(power[k])] for k in range(nbins)]


#######################################################################
class CometSimulator(MemorySimulator):
    """ Trace simulation of a COMET chip

        Parameters
        ----------
        g : MemoryGeometry
            Validated organization.

        timing : TimingParams
            Array timing and policy.

        table : LevelTable
            Level table of the cells.

        optics : PhotonicsParams
            Optical model.

        lut : GainLUT, optional
            Gain table used for the readout integrity check. Default is the
            table built for the geometry's bit density.

        guard_band, overshoot : float, optional
            Decoder settings of the readout check, see
            integrity.decode_failures.

        line_bytes : int, optional
            Cache line size. Default 128.

        timeline_ns : float, optional
            Bucket width of the power timeline.
    """
    arch = cometdefs.ARCH_COMET

    def __init__(self, g, timing, table, optics, lut=None, line_bytes=cometdefs.DEFAULT_LINE_BYTES,
                 timeline_ns=None, guard_band=cometdefs.DECODE_GUARD_BAND,
                 overshoot=cometdefs.DECODE_OVERSHOOT):
        MemorySimulator.__init__(self, line_bytes, timing.interface_ns, timing.interface_holds_bank,
                                 timeline_ns)
        geo.validate_geometry(g)
        if table.bits != g.bits_per_cell:
            raise DomainError('level table bits', table.bits, 'b=%d of the geometry' % g.bits_per_cell)
        self.geometry = g
        self.timing = timing
        self.table = table
        self.optics = optics
        self.cells_per_line = geo.cache_line_cells(g, line_bytes)
        self.burst_length = timing.burst_length_for(line_bytes)
        self.farthest = table.farthest_level()

        losses = optics.losses
        if lut is None:
            lut = integrity.build_gain_lut(g.bits_per_cell, g.subarray_rows, optics.soa_interval,
                                           losses.eo_mr_through_db)
        self.lut = lut
        tolerance = integrity.loss_tolerance_db(g.bits_per_cell)
        # a read errs on rows out of tolerance or where some level misdecodes
        self.failing = integrity.failing_rows(lut, g.subarray_rows, tolerance, losses.eo_mr_through_db,
                                              optics.soa_gain_db)
        self.failing |= integrity.decode_failures(lut, table, g.subarray_rows, losses.eo_mr_through_db,
                                                  optics.soa_gain_db, guard_band, overshoot)

        stack = optics.stack(g, table.mode)
        self._static = OrderedDict([(cometdefs.E_LASER, stack['laser_w'])])
        self._busy = OrderedDict([(cometdefs.E_SOA, stack['soa_w'] / g.banks),
                                  (cometdefs.E_EO, stack['eo_tuning_w'] / g.banks)])

    def static_power_w(self):
        return self._static

    def busy_power_w(self):
        return self._busy

    def locate(self, address):
        phys = geo.decompose_flat_address(address, self.geometry, self.line_bytes)
        mapped = geo.map_address(phys, self.geometry)
        return LineLocation(bank=(mapped.channel, mapped.bank),
                            subarray=(mapped.channel, mapped.subarray_id),
                            row=mapped.subarray_row)

    def service(self, bank, op, loc, level):
        tim = self.timing
        closed = tim.policy == cometdefs.POLICY_CLOSED
        switched = closed or bank.subarray != loc.subarray
        tuned = switched or bank.row != loc.row
        bank.subarray = loc.subarray
        bank.row = loc.row

        busy = (tim.gst_switch_ns if switched else 0.0) + (tim.eo_tune_ns if tuned else 0.0)
        if op == cometdefs.OP_READ:
            busy += tim.read_ns + self.burst_length * tim.burst_ns
            return Access(busy_ns=busy, switched=switched, tuned=tuned,
                          decode_error=bool(self.failing[loc.row]))

        target = self.table.row(self.farthest if level is None else level)
        busy += self.table.reset_latency_ns + target.program_ns
        energy = self.cells_per_line * (self.table.reset_energy_pj + target.program_pj)
        return Access(busy_ns=busy, energy_pj=energy, switched=switched, tuned=tuned)


#######################################################################
def simulate_comet(trace, g, timing, table, optics, lut=None, line_bytes=cometdefs.DEFAULT_LINE_BYTES,
                   timeline_ns=None, guard_band=cometdefs.DECODE_GUARD_BAND,
                   overshoot=cometdefs.DECODE_OVERSHOOT):
    """ Simulate a trace on a COMET chip, see CometSimulator """
    return CometSimulator(g, timing, table, optics, lut, line_bytes, timeline_ns,
                          guard_band, overshoot).run(trace)


#######################################################################
@dataclass(frozen=True)
class SweepJob:
    """ One bit density of a sweep """
    geometry: geo.MemoryGeometry
    timing: TimingParams
    optics: photonics.PhotonicsParams
    mode: str = cometdefs.RESET_CRYSTALLINE
    line_bytes: int = cometdefs.DEFAULT_LINE_BYTES
    guard_band: float = cometdefs.DECODE_GUARD_BAND
    overshoot: float = cometdefs.DECODE_OVERSHOOT


def _sweep_one(job, trace):
    from comet import pcm_cell

    table = pcm_cell.build_level_table(job.geometry.bits_per_cell, job.mode,
                                       reset_latency_ns=job.timing.erase_ns,
                                       max_write_ns=job.timing.max_write_ns)
    stats = simulate_comet(trace, job.geometry, job.timing, table, job.optics, line_bytes=job.line_bytes,
                           guard_band=job.guard_band, overshoot=job.overshoot)
    return stats, job.optics.stack(job.geometry, job.mode)


def sweep_bit_density(trace, family, timing, optics, mode=cometdefs.RESET_CRYSTALLINE,
                      line_bytes=cometdefs.DEFAULT_LINE_BYTES, nproc=None,
                      guard_band=cometdefs.DECODE_GUARD_BAND, overshoot=cometdefs.DECODE_OVERSHOOT):
    """ Run one trace on the equal-capacity geometries of b = 1, 2 and 4

        Parameters
        ----------
        trace : list
            TraceRequest items.

        family : OrderedDict
            b -> MemoryGeometry, from geometry.geometry_family.

        timing : TimingParams
            Shared timing.

        optics : PhotonicsParams
            Shared optical model; the default path follows each geometry.

        mode : str, optional
            Reset mode.

        line_bytes : int, optional
            Cache line size.

        nproc : int, optional
            Worker processes. Default is the number of physical cores, at
            most one per geometry; 1 runs in this process.

        guard_band, overshoot : float, optional
            Decoder settings of the readout check.

        Returns
        -------
        OrderedDict
            b -> OrderedDict(geometry, stats, power)
    """
    jobs = [SweepJob(g, timing, optics, mode, line_bytes, guard_band, overshoot) for g in family.values()]
    if nproc is None:
        nproc = psutil.cpu_count(logical=False) or 1
    nproc = max(1, min(nproc, len(jobs)))

    if nproc > 1:
        import multiprocessing as mp
        with mp.Pool(processes=nproc) as pool:
            results = pool.starmap(_sweep_one, [(job, trace) for job in jobs])
    else:
        results = [_sweep_one(job, trace) for job in jobs]

    if miscutils.fwdebug_check(3, 'ENGINE_DEBUG'):
        miscutils.fwdebug_print("swept %d geometries with %d processes" % (len(jobs), nproc))

    sweep = OrderedDict()
    for (bits, g), (stats, stack) in zip(family.items(), results):
        sweep[bits] = OrderedDict([('geometry', g), ('stats', stats), ('power', stack)])
    return sweep
