import itertools

import numpy as np
import pytest

from comet import photonics
from comet import trace_synth
from comet.engine import TraceRequest, simulate_comet
from comet.exceptions import DomainError
from cosmos import cosmosdefs
from cosmos import crossbar as xb


@pytest.fixture
def cfg():
    return xb.CrossbarConfig()


def test_crosstalk_energy():
    assert xb.crosstalk_energy_pj(750.0, -18.0) == pytest.approx(11.89, abs=0.01)
    assert 11.0 <= xb.crosstalk_energy_pj(750.0, -18.0) <= 13.0
    with pytest.raises(DomainError):
        xb.crosstalk_energy_pj(-1.0, -18.0)


def test_config_defaults(cfg):
    assert cfg.t_clear == 0.99
    assert cfg.subarray_count == 512
    assert cfg.capacity_bits == 2 ** 33
    assert cfg.geometry().capacity_bits == cfg.capacity_bits


def test_as_published():
    pub = xb.CrossbarConfig.as_published()
    assert pub.bits_per_cell == 4
    assert len(pub.levels) == 16
    assert pub.levels[0] == pytest.approx(0.95)
    assert pub.levels[-1] == pytest.approx(0.05)
    assert np.allclose(np.diff(pub.levels), -0.06)
    assert pub.write_energy_pj == 135.0


@pytest.mark.parametrize('kwargs', [{'levels': (0.99, 0.90, 0.81)},
                                    {'levels': (0.90, 0.99, 0.81, 0.72)},
                                    {'levels': (1.2, 0.90, 0.81, 0.72)},
                                    {'rows': 100},
                                    {'crosstalk_db': 0.0},
                                    {'disturbance_sign': 0},
                                    {'decode_rule': 'closest'}])
def test_config_domain(kwargs):
    with pytest.raises(DomainError):
        xb.CrossbarConfig(**kwargs)


#######################################################################
def test_disturbance_hits_adjacent_rows_only(cfg):
    arr = xb.CrossbarArray(np.zeros((5, 3)), cfg.t_clear)
    out = xb.apply_write_disturbance(arr, 2, cfg)
    assert np.allclose(out.fractions[[1, 3]], cfg.disturbance)
    assert np.all(out.fractions[[0, 2, 4]] == 0.0)
    assert np.all(arr.fractions == 0.0)

    edge = xb.apply_write_disturbance(arr, 0, cfg)
    assert np.allclose(edge.fractions[1], cfg.disturbance)
    assert np.count_nonzero(edge.fractions) == 3


def test_disturbance_clamps(cfg):
    arr = xb.CrossbarArray(np.full((3, 2), 0.97), cfg.t_clear)
    assert np.all(xb.apply_write_disturbance(arr, 1, cfg).fractions <= 1.0)


def test_isolated_cells_are_not_disturbed(cfg):
    arr = xb.CrossbarArray(np.zeros((4, 4)), cfg.t_clear, isolated=True)
    out = xb.write_row(arr, 1, [3, 2, 1, 0], cfg)
    assert np.all(out.fractions[[0, 2, 3]] == 0.0)
    assert np.allclose(out.transmission()[1], [0.72, 0.81, 0.90, 0.99])


def test_array_domain(cfg):
    with pytest.raises(DomainError):
        xb.CrossbarArray(np.zeros(4), cfg.t_clear)
    with pytest.raises(DomainError):
        xb.CrossbarArray(np.full((2, 2), 1.5), cfg.t_clear)
    with pytest.raises(DomainError):
        xb.CrossbarArray.from_levels([[4]], cfg)
    with pytest.raises(DomainError):
        xb.apply_write_disturbance(xb.CrossbarArray(np.zeros((2, 2)), cfg.t_clear), 2, cfg)


#######################################################################
def test_one_disturbance_never_flips_two_can(cfg):
    base = np.array(cfg.levels)
    once = base - cfg.disturbance
    twice = base - 2 * cfg.disturbance
    assert list(xb.decode_levels(once, cfg)) == [0, 1, 2, 3]
    flipped = xb.decode_levels(twice, cfg)
    assert flipped[0] == 1
    assert flipped[-1] == -1
    assert np.all(flipped != [0, 1, 2, 3])


def test_published_ladder_flips_after_one_disturbance():
    pub = xb.CrossbarConfig.as_published()
    once = np.array(pub.levels[:-1]) - pub.disturbance
    assert np.all(xb.decode_levels(once, pub) != np.arange(15))


def test_nearest_rule():
    near = xb.CrossbarConfig(decode_rule=cosmosdefs.DECODE_NEAREST)
    assert list(xb.decode_levels([0.56, 0.94, 1.0], near)) == [3, 1, 0]


def test_subtractive_read_recovers_every_content(cfg):
    # one column per 4-row content
    contents = np.array(list(itertools.product(range(4), repeat=4))).T
    arr = xb.CrossbarArray.from_levels(contents, cfg)
    for row in range(4):
        values, reset, errors = xb.subtractive_read(arr, row, cfg)
        assert errors == 0
        assert np.array_equal(values, contents[row])
        assert np.all(reset.fractions[row] == 0.0)
        assert np.array_equal(np.delete(reset.fractions, row, 0), np.delete(arr.fractions, row, 0))


def test_subtractive_read_reports_corruption(cfg):
    arr = xb.CrossbarArray.from_levels([[3, 3], [0, 0]], cfg)
    for _ in range(2):
        arr = xb.apply_write_disturbance(arr, 1, cfg)
    values, _, errors = xb.subtractive_read(arr, 0, cfg)
    assert errors == 2
    assert list(values) == [-1, -1]


#######################################################################
def test_soa_arrays_per_subarray(cfg):
    assert xb.soa_arrays_per_subarray(cfg) == 6
    path = xb.cosmos_worst_case_path(cfg, photonics.LossParams())
    assert sum(1 for elem in path if elem.kind == photonics.INTRA_SOA) == 3


def test_power_against_comet(cfg, comet4b):
    optics = photonics.PhotonicsParams()
    stack = xb.cosmos_power_stack(cfg, optics.losses, optics.power)
    assert stack['eo_tuning_w'] == 0.0
    assert stack['total_w'] == pytest.approx(stack['laser_w'] + stack['soa_w'])
    assert optics.stack(comet4b)['total_w'] / stack['total_w'] < 0.5


def test_cold_accesses(cfg, optics):
    read = xb.simulate_cosmos([TraceRequest(0.0, 'R', 0)], cfg, optics)
    # switch 100 + read 25 + erase 250 + read 25 + 8 bursts + interface 105
    assert read.latency_avg_ns == pytest.approx(513.0)
    assert read.energy_pj['write_pulse'] == pytest.approx(512 * 750.0)
    write = xb.simulate_cosmos([TraceRequest(0.0, 'W', 0)], cfg, optics)
    assert write.latency_avg_ns == pytest.approx(100 + 250 + 1600 + 105)

    blocking = xb.CrossbarConfig(blocking_rewrite=True)
    trace = [TraceRequest(0.0, 'R', 0), TraceRequest(0.0, 'R', 16 * 128)]
    assert (xb.simulate_cosmos(trace, blocking, optics).latency_max_ns >
            xb.simulate_cosmos(trace, cfg, optics).latency_max_ns)


def test_streaming_comparison(cfg, comet4b, timing, table4b, optics):
    capacity = min(cfg.geometry().capacity_bytes, comet4b.capacity_bytes)
    trace = trace_synth.generate(trace_synth.TraceSpec(count=100000), capacity)
    comet = simulate_comet(trace, comet4b, timing, table4b, optics)
    cosmos = xb.simulate_cosmos(trace, cfg, optics)
    assert 3.0 <= comet.bandwidth_bytes_per_s / cosmos.bandwidth_bytes_per_s <= 10.0
    assert 1.5 <= cosmos.latency_avg_ns / comet.latency_avg_ns <= 6.0
    assert cosmos.epb_pj_per_bit / comet.epb_pj_per_bit > 5.0
