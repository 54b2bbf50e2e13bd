import cmath

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import optimize

from comet import cometdefs
from comet import integrity
from comet import pcm_cell
from comet.exceptions import DecodeError, DomainError, LevelTableSchemaError

EPS_A = 4.0
EPS_C = 9.0


def test_ladder():
    trans = [pcm_cell.ladder_transmission(i) for i in range(16)]
    assert trans[0] == pytest.approx(0.95, abs=1e-12)
    assert np.allclose(np.diff(trans), -0.06, atol=1e-12, rtol=0)


@pytest.mark.parametrize('bits', [1, 2, 4])
def test_level_table_shape(bits):
    table = pcm_cell.build_level_table(bits)
    assert table.size == 2 ** bits
    assert table.rows[0].transmission == pytest.approx(0.95)
    assert table.rows[-1].transmission == pytest.approx(0.05)
    assert np.all(np.diff(table.transmissions) < 0)
    assert table.max_program_ns == cometdefs.MAX_WRITE_NS


def test_level_table_reset_modes():
    cryst = pcm_cell.build_level_table(4, cometdefs.RESET_CRYSTALLINE)
    amorph = pcm_cell.build_level_table(4, cometdefs.RESET_AMORPHOUS)
    assert cryst.farthest_level() == 0
    assert amorph.farthest_level() == 15
    assert cryst.rows[15].program_ns == cometdefs.MIN_PROGRAM_NS
    assert cryst.reset_energy_pj == 880.0
    assert amorph.reset_energy_pj == 280.0
    # mW x ns = pJ
    assert amorph.rows[15].program_pj == pytest.approx(5.0 * 170.0)
    assert cryst.rows[0].program_pj == pytest.approx(1.0 * 170.0)


def test_level_table_errors():
    with pytest.raises(DomainError):
        pcm_cell.build_level_table(3)
    with pytest.raises(DomainError):
        pcm_cell.build_level_table(2, 'half-reset')
    with pytest.raises(LevelTableSchemaError):
        pcm_cell.build_level_table(1, overrides=[{'latency_ns': 10}])
    with pytest.raises(LevelTableSchemaError):
        pcm_cell.build_level_table(1, overrides=[{'latency_ns': 10}, {'latency_ns': 500}])
    with pytest.raises(LevelTableSchemaError):
        pcm_cell.build_level_table(1, overrides=[{'latency_ns': 10}, {'energy_pj': 5}])
    with pytest.raises(LevelTableSchemaError):
        pcm_cell.build_level_table(1, overrides=[{'latency_ns': 10, 'transmission': 0.5},
                                                 {'latency_ns': 20}])


def test_max_write_sets_ramp_and_override_cap():
    table = pcm_cell.build_level_table(4, max_write_ns=20.0)
    assert table.rows[table.farthest_level()].program_ns == 20.0
    assert table.rows[15].program_ns == cometdefs.MIN_PROGRAM_NS
    assert table.max_program_ns == 20.0
    assert pcm_cell.build_level_table(1, overrides=[{'latency_ns': 10}, {'latency_ns': 20}],
                                      max_write_ns=20.0).max_program_ns == 20.0
    with pytest.raises(LevelTableSchemaError):
        pcm_cell.build_level_table(1, overrides=[{'latency_ns': 10}, {'latency_ns': 30}],
                                   max_write_ns=20.0)
    with pytest.raises(DomainError):
        pcm_cell.build_level_table(4, max_write_ns=5.0)


def test_level_table_row_lookup(table4b):
    assert table4b.row(3).level == 3
    with pytest.raises(DomainError):
        table4b.row(16)


@given(st.integers(min_value=0, max_value=15), st.integers(min_value=0, max_value=45))
def test_lut_restored_readout_decodes(value, row):
    table = pcm_cell.build_level_table(4)
    lut = integrity.build_gain_lut(4)
    loss_db = row * cometdefs.EO_MR_THROUGH_DB
    measured = pcm_cell.encode_symbol(value, table).transmission * 10.0 ** (-loss_db / 10.0)
    restored = measured * 10.0 ** (integrity.lut_gain_for_row(lut, row) / 10.0)
    assert pcm_cell.decode_transmission(restored, table) == value


@given(st.integers(min_value=0, max_value=15),
       st.floats(min_value=0.0, max_value=0.5 * cometdefs.LADDER_SPACING, exclude_max=True))
def test_small_drop_restored_in_gain_steps(value, drop):
    table = pcm_cell.build_level_table(4)
    loss_db = pcm_cell.cell_insertion_loss_db(1.0 - drop)
    gain_db = round(loss_db / integrity.GAIN_STEP_DB) * integrity.GAIN_STEP_DB
    measured = pcm_cell.encode_symbol(value, table).transmission * (1.0 - drop)
    restored = measured * 10.0 ** (gain_db / 10.0)
    assert pcm_cell.decode_transmission(restored, table) == value


def test_unrestored_drop_reaches_the_decoder(table4b):
    with pytest.raises(DecodeError):
        pcm_cell.decode_transmission(table4b.rows[1].transmission * (1.0 - 0.029), table4b)


def test_encode_range(table4b):
    with pytest.raises(DomainError):
        pcm_cell.encode_symbol(16, table4b)


def test_decode_guard_band(table4b):
    boundary = 0.5 * (table4b.rows[0].transmission + table4b.rows[1].transmission)
    with pytest.raises(DecodeError) as exc:
        pcm_cell.decode_transmission(boundary + 0.005, table4b)
    assert exc.value.candidates == (0, 1)
    assert pcm_cell.decode_transmission(boundary + 0.015, table4b) == 0
    with pytest.raises(DomainError):
        pcm_cell.decode_transmission(1.2, table4b)
    assert pcm_cell.decode_transmission(1.04, table4b) == 0


def test_transition_cost_is_blind(table4b):
    energy, latency = pcm_cell.transition_cost(5, 5, table4b)
    assert latency == table4b.reset_latency_ns + table4b.rows[5].program_ns
    assert energy == table4b.reset_energy_pj + table4b.rows[5].program_pj


def test_effective_permittivity_endpoints():
    assert pcm_cell.effective_permittivity(0.0, EPS_A, EPS_C) == EPS_A
    assert pcm_cell.effective_permittivity(1.0, EPS_A, EPS_C) == EPS_C
    with pytest.raises(DomainError):
        pcm_cell.effective_permittivity(1.5, EPS_A, EPS_C)
    with pytest.raises(DomainError):
        pcm_cell.effective_permittivity(0.5, -1.0, EPS_C)


def test_effective_index_monotone():
    idx_a = pcm_cell.ComplexIndex.from_permittivity(EPS_A)
    idx_c = pcm_cell.ComplexIndex.from_permittivity(EPS_C)
    n_eff = [pcm_cell.effective_index(f, idx_a, idx_c).n for f in np.linspace(0.0, 1.0, 1000)]
    assert n_eff[0] == pytest.approx(2.0)
    assert n_eff[-1] == pytest.approx(3.0)
    assert np.all(np.diff(n_eff) > 0)


def test_midpoint_matches_bisection():
    mix = 0.5 * (EPS_C - 1) / (EPS_C + 2) + 0.5 * (EPS_A - 1) / (EPS_A + 2)
    oracle = optimize.bisect(lambda eps: (eps - 1) / (eps + 2) - mix, EPS_A, EPS_C, xtol=1e-13)
    assert abs(pcm_cell.effective_permittivity(0.5, EPS_A, EPS_C).real - oracle) < 1e-9


def test_inverse_matches_bisection():
    n_target = 2.5
    f_c = pcm_cell.crystalline_fraction_for_index(n_target, EPS_A, EPS_C)

    def resid(f):
        return cmath.sqrt(pcm_cell.effective_permittivity(f, EPS_A, EPS_C)).real - n_target

    oracle = optimize.bisect(resid, 0.0, 1.0, xtol=1e-13)
    assert abs(f_c - oracle) < 1e-9
    with pytest.raises(DomainError):
        pcm_cell.crystalline_fraction_for_index(3.5, EPS_A, EPS_C)
    assert pcm_cell.crystalline_fraction_for_index(2.0, EPS_A, EPS_C) == 0.0


@given(st.floats(min_value=0.0, max_value=1.0), st.floats(min_value=0.0, max_value=1.0))
def test_permittivity_monotone_in_fraction(f1, f2):
    lo, hi = sorted((f1, f2))
    assert (pcm_cell.effective_permittivity(lo, EPS_A, EPS_C).real <=
            pcm_cell.effective_permittivity(hi, EPS_A, EPS_C).real + 1e-12)


def test_complex_index():
    idx = pcm_cell.ComplexIndex(2.0, 0.5)
    assert pcm_cell.ComplexIndex.from_permittivity(idx.to_permittivity()).n == pytest.approx(2.0)
    with pytest.raises(DomainError):
        pcm_cell.ComplexIndex(0.0)


def test_wavelength_loss():
    assert pcm_cell.wavelength_loss(1530.0) == pytest.approx(0.073)
    assert pcm_cell.wavelength_loss(1565.0) == pytest.approx(0.067)
    assert pcm_cell.wavelength_loss(1547.5) == pytest.approx(0.070)
    band = [pcm_cell.wavelength_loss(lam) for lam in np.linspace(1530.0, 1565.0, 36)]
    assert max(band) - min(band) <= 0.006 + 1e-12
    with pytest.raises(DomainError):
        pcm_cell.wavelength_loss(1310.0)


def test_cell_insertion_loss():
    assert pcm_cell.cell_insertion_loss_db(1.0) == 0.0
    assert pcm_cell.cell_insertion_loss_db(0.5) == pytest.approx(3.0103, abs=1e-4)
    with pytest.raises(DomainError):
        pcm_cell.cell_insertion_loss_db(0.0)
