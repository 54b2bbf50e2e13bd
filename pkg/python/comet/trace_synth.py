"""
    .. _comet-trace-synth:

    **trace_synth**
    ---------------

    Deterministic synthetic request traces.

    Patterns:

    * ``stream``: consecutive cache lines from address 0, wrapping at the
      footprint.
    * ``stride``: every k-th cache line, wrapping at the footprint.
    * ``random``: uniformly drawn line-aligned addresses inside the
      footprint.

    Random addresses come from xorshift64* (Vigna): a 64-bit state updated
    by ``x ^= x >> 12; x ^= x << 25; x ^= x >> 27`` and output
    ``x * 0x2545F4914F6CDD1D mod 2**64``. The state is seeded with
    ``seed ^ 0x9E3779B97F4A7C15`` (a zero result is replaced by that
    constant), and the line index is the output modulo the number of lines
    in the footprint. Traces are therefore identical on every platform.

    The number of reads is floor(read_fraction x count + 0.5); reads are
    spread evenly over the trace, request i being a read when
    floor((i + 1) r / n) > floor(i r / n).
"""

from dataclasses import dataclass

import pcmmisc.miscutils as miscutils
from comet import cometdefs
from comet.engine import TraceRequest
from comet.exceptions import DomainError

PATTERN_STREAM = 'stream'
PATTERN_STRIDE = 'stride'
PATTERN_RANDOM = 'random'
VALID_PATTERNS = (PATTERN_STREAM, PATTERN_STRIDE, PATTERN_RANDOM)

MASK64 = (1 << 64) - 1
XORSHIFT_MULT = 0x2545F4914F6CDD1D
SEED_MIX = 0x9E3779B97F4A7C15


class XorShift64Star:
    """ xorshift64* generator, see the module notes """

    def __init__(self, seed):
        self.state = (int(seed) ^ SEED_MIX) & MASK64 or SEED_MIX

    def next(self):
        """ Next 64-bit output """
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self.state = x
        return (x * XORSHIFT_MULT) & MASK64


@dataclass(frozen=True)
class TraceSpec:
    """ Description of a synthetic trace

        Parameters
        ----------
        pattern : str
            'stream', 'stride' or 'random'.

        count : int
            Number of requests.

        read_fraction : float, optional
            Fraction of reads in [0, 1]. Default 1.

        inter_arrival_ns : float, optional
            Time between consecutive arrivals. Default 0, every request
            arriving at once (a saturating stream).

        footprint_bytes : int, optional
            Bytes the addresses stay within. Default is the whole memory.

        line_bytes : int, optional
            Cache line size. Default 128.

        stride_lines : int, optional
            k of the stride pattern. Default 1.

        seed : int, optional
            Seed of the random pattern. Default 1.

        start_ns : float, optional
            Arrival time of the first request. Default 0.
    """
    pattern: str = PATTERN_STREAM
    count: int = 1000
    read_fraction: float = 1.0
    inter_arrival_ns: float = 0.0
    footprint_bytes: int = None
    line_bytes: int = cometdefs.DEFAULT_LINE_BYTES
    stride_lines: int = 1
    seed: int = 1
    start_ns: float = 0.0

    def __post_init__(self):
        if self.pattern not in VALID_PATTERNS:
            raise DomainError('pattern', self.pattern, str(VALID_PATTERNS))
        if self.count < 0:
            raise DomainError('count', self.count, '[0, inf)')
        if not 0.0 <= self.read_fraction <= 1.0:
            raise DomainError('read_fraction', self.read_fraction, '[0, 1]')
        if self.inter_arrival_ns < 0 or self.start_ns < 0:
            raise DomainError('inter_arrival_ns/start_ns', (self.inter_arrival_ns, self.start_ns),
                              '[0, inf)')
        if self.line_bytes not in cometdefs.VALID_LINE_BYTES:
            raise DomainError('line_bytes', self.line_bytes, str(cometdefs.VALID_LINE_BYTES))
        if self.stride_lines < 1:
            raise DomainError('stride_lines', self.stride_lines, '[1, inf)')


#######################################################################
def read_count(spec):
    """ Reads in a trace, floor(fraction x count + 0.5) """
    return int(spec.read_fraction * spec.count + 0.5)


#######################################################################
def generate(spec, capacity_bytes):
    """ Generate the requests of a trace

        Parameters
        ----------
        spec : TraceSpec
            The trace description.

        capacity_bytes : int
            Capacity of the target memory.

        Returns
        -------
        list
            TraceRequest items of one cache line each.

        Raises
        ------
        DomainError
            If the footprint exceeds the capacity or holds no whole line.
    """
    footprint = capacity_bytes if spec.footprint_bytes is None else spec.footprint_bytes
    if footprint > capacity_bytes:
        raise DomainError('footprint_bytes', footprint, '[%d, %d]' % (spec.line_bytes, capacity_bytes))
    lines = footprint // spec.line_bytes
    if lines < 1:
        raise DomainError('footprint_bytes', footprint, '[%d, %d]' % (spec.line_bytes, capacity_bytes))

    nreads = read_count(spec)
    rng = XorShift64Star(spec.seed) if spec.pattern == PATTERN_RANDOM else None
    requests = []
    for i in range(spec.count):
        if spec.pattern == PATTERN_STREAM:
            line = i % lines
        elif spec.pattern == PATTERN_STRIDE:
            line = (i * spec.stride_lines) % lines
        else:
            line = rng.next() % lines

        is_read = (i + 1) * nreads // spec.count > i * nreads // spec.count
        op = cometdefs.OP_READ if is_read else cometdefs.OP_WRITE
        requests.append(TraceRequest(spec.start_ns + i * spec.inter_arrival_ns, op,
                                     line * spec.line_bytes))

    if miscutils.fwdebug_check(3, 'TRACESYNTH_DEBUG'):
        miscutils.fwdebug_print("%s trace: %d requests, %d reads, %d lines in footprint" %
                                (spec.pattern, spec.count, nreads, lines))
    return requests
