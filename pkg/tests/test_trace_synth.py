import pytest

from comet import trace_synth as ts
from comet.exceptions import DomainError

CAPACITY = 1 << 30


def test_xorshift_outputs():
    rng = ts.XorShift64Star(1)
    assert [rng.next() for _ in range(3)] == [0x102aceb9af8e2597, 0x24b89d23169e484a, 0xb584971aa4ad2dcf]
    rng = ts.XorShift64Star(42)
    assert rng.next() == 0x08328d7f03bcec1a


def test_xorshift_zero_state_is_replaced():
    assert ts.XorShift64Star(ts.SEED_MIX).state == ts.SEED_MIX


def test_stream():
    reqs = ts.generate(ts.TraceSpec(count=3, inter_arrival_ns=5.0, start_ns=10.0), CAPACITY)
    assert [r.address for r in reqs] == [0x0, 0x80, 0x100]
    assert [r.time_ns for r in reqs] == [10.0, 15.0, 20.0]
    assert all(r.op == 'R' and r.size is None for r in reqs)


def test_stream_wraps_at_footprint():
    reqs = ts.generate(ts.TraceSpec(count=4, footprint_bytes=256), CAPACITY)
    assert [r.address for r in reqs] == [0, 0x80, 0, 0x80]


def test_stride():
    spec = ts.TraceSpec(pattern='stride', count=4, stride_lines=3, footprint_bytes=4 * 128)
    assert [r.address // 128 for r in ts.generate(spec, CAPACITY)] == [0, 3, 2, 1]


def test_random_is_seeded():
    spec = ts.TraceSpec(pattern='random', count=200, footprint_bytes=1024 * 128, line_bytes=128)
    first = ts.generate(spec, CAPACITY)
    assert first == ts.generate(spec, CAPACITY)
    assert first[0].address == 407 * 128
    assert all(r.address % 128 == 0 and r.address < 1024 * 128 for r in first)
    other = ts.generate(ts.TraceSpec(pattern='random', count=200, footprint_bytes=1024 * 128, seed=2),
                        CAPACITY)
    assert [r.address for r in other] != [r.address for r in first]


@pytest.mark.parametrize('count, fraction, reads', [(10, 0.25, 3), (3, 0.5, 2), (7, 0.0, 0),
                                                    (7, 1.0, 7), (100000, 0.7, 70000)])
def test_read_count(count, fraction, reads):
    spec = ts.TraceSpec(count=count, read_fraction=fraction)
    assert ts.read_count(spec) == reads
    assert sum(r.op == 'R' for r in ts.generate(spec, CAPACITY)) == reads


def test_reads_are_spread():
    reqs = ts.generate(ts.TraceSpec(count=4, read_fraction=0.5), CAPACITY)
    assert [r.op for r in reqs] == ['W', 'R', 'W', 'R']


def test_footprint_errors():
    with pytest.raises(DomainError):
        ts.generate(ts.TraceSpec(count=1, footprint_bytes=2 * CAPACITY), CAPACITY)
    with pytest.raises(DomainError):
        ts.generate(ts.TraceSpec(count=1, footprint_bytes=64), CAPACITY)


@pytest.mark.parametrize('kwargs', [{'pattern': 'zigzag'}, {'count': -1}, {'read_fraction': 1.5},
                                    {'inter_arrival_ns': -1.0}, {'line_bytes': 48},
                                    {'stride_lines': 0}])
def test_spec_domain(kwargs):
    with pytest.raises(DomainError):
        ts.TraceSpec(**kwargs)
