import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import REF_BENDING_LIMIT, REF_VARIANCE_SAGNAC, REF_VARIANCE_TOTAL, TWO_PI
from oracles import trapezoid
from railnoise.beam import BeamSpec, omega0
from railnoise.noise import (
    CSV_HEADER,
    NoiseSpectrum,
    PhaseNoisePsd,
    SpectrumFormatError,
    extend_constant,
    frequency_grid,
    integrate_phase_variance,
    load_spectrum,
    model_grid,
    parse_spectrum,
    phase_noise_psd,
    rms_bending,
    smooth_envelope,
)
from railnoise.phase import phase_transfer_approx

spectra = st.lists(st.floats(0, 1e-10), min_size=3, max_size=40).map(
    lambda v: NoiseSpectrum(np.geomspace(1, 100, len(v)), np.array(v))
)


def test_parse_two_samples():
    spec = parse_spectrum("1.0 1e-12\n10.0 1e-14")
    assert spec.frequency.tolist() == [1.0, 10.0]
    assert spec.psd.tolist() == [1e-12, 1e-14]


def test_parse_comments_and_blanks():
    spec = parse_spectrum("# header\n\n1.0 1e-12\n   # indented\n2.5E+00 3.0e-13\n")
    assert len(spec.frequency) == 2


def test_parse_rejects_descending():
    with pytest.raises(SpectrumFormatError, match=":2:"):
        parse_spectrum("10.0 1e-12\n1.0 1e-14")


@pytest.mark.parametrize("text,line", [("1.0 1e-12\n2.0\n", 2), ("1 x\n", 1), ("1 -1e-12\n", 1)])
def test_parse_reports_line(text, line):
    with pytest.raises(SpectrumFormatError, match=f":{line}:"):
        parse_spectrum(text)


def test_load_spectrum_file(tmp_path):
    path = tmp_path / "s.psd"
    path.write_text("# c\n1 2e-12\n3 4e-12\n", encoding="utf-8")
    spec = load_spectrum(path)
    assert spec.source == str(path) and spec.psd[1] == 4e-12


def test_interpolation_is_power_law_between_samples():
    spec = NoiseSpectrum(np.array([1.0, 10.0]), np.array([1e-10, 1e-12]))
    assert spec(np.sqrt(10.0)) == pytest.approx(1e-11, rel=1e-12)
    zero = NoiseSpectrum(np.array([1.0, 2.0]), np.array([0.0, 2.0]))
    assert zero(1.5) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        spec(20.0)


def test_smooth_flat_unchanged():
    spec = NoiseSpectrum(np.geomspace(1, 100, 50), np.full(50, 3e-12))
    np.testing.assert_array_equal(smooth_envelope(spec, 0.5).psd, spec.psd)


def test_smooth_spike_becomes_plateau():
    f = 2.0 ** np.arange(0, 8, 0.125)  # 8 samples per octave
    psd = np.full(f.size, 1e-14)
    spike = 32
    psd[spike] = 1e-10
    out = smooth_envelope(NoiseSpectrum(f, psd), 0.5).psd
    hot = np.flatnonzero(out == 1e-10)
    # +-1/4 octave around the spike = 2 samples either side
    assert hot.tolist() == list(range(spike - 2, spike + 3))


@given(spectra, st.floats(0.05, 3))
def test_smooth_never_below_input(spec, width):
    assert np.all(smooth_envelope(spec, width).psd >= spec.psd)


def test_smooth_rejects_bad_window():
    with pytest.raises(ValueError):
        smooth_envelope(NoiseSpectrum(np.array([1.0]), np.array([1.0])), 0)


def test_extend_constant():
    spec = NoiseSpectrum(np.geomspace(1, 100, 21), np.geomspace(1e-10, 1e-14, 21))
    ext = extend_constant(spec, 1000.0)
    n = spec.frequency.size
    assert np.array_equal(ext.frequency[:n], spec.frequency)
    assert np.array_equal(ext.psd[:n], spec.psd)
    assert ext.frequency[-1] == 1000.0
    assert np.all(ext.psd[n:] == spec.psd[-1])
    with pytest.raises(ValueError):
        extend_constant(spec, 50.0)


def test_frequency_grid_refines_resonances():
    g = frequency_grid(2, 1000, 200, resonances=[40.0])
    assert g[0] == 2 and g[-1] == 1000 and np.all(np.diff(g) > 0)
    base_step = np.log(1000 / 2) / 199
    near = g[(g > 38) & (g < 42)]
    assert np.max(np.diff(np.log(near))) <= base_step / 9


def flat_psd(value, f):
    ones = np.full(f.size, value)
    return PhaseNoisePsd(f, ones, ones, ones, ones)


def test_integrate_flat_rectangle():
    f = np.geomspace(1, 2000, 500)
    var = integrate_phase_variance(flat_psd(2.5e-4, f), 2.0, 1000.0)
    assert var["total"] == pytest.approx(2.5e-4 * 998, rel=1e-12)


def test_integrate_matches_plain_trapezoid():
    f = np.geomspace(2, 1000, 300)
    y = 1e-3 / f
    psd = PhaseNoisePsd(f, y, y, y, y)
    assert integrate_phase_variance(psd)["sagnac"] == pytest.approx(trapezoid(f, y), rel=1e-13)


def test_integrate_empty_range():
    f = np.geomspace(1, 2000, 50)
    with pytest.raises(ValueError):
        integrate_phase_variance(flat_psd(1.0, f), 10.0, 10.0)
    with pytest.raises(ValueError):
        integrate_phase_variance(flat_psd(1.0, f), 0.5, 10.0)


def test_reference_constants():
    assert (REF_VARIANCE_TOTAL, REF_VARIANCE_SAGNAC) == (0.16, 0.13)
    assert REF_BENDING_LIMIT == 3e-9


def test_zero_spectrum_gives_zero(ref_model):
    beam, support, ifm = ref_model
    spec = NoiseSpectrum(np.array([1.0, 1000.0]), np.zeros(2))
    psd = phase_noise_psd(spec, beam, support, ifm)
    for c in psd.COMPONENTS:
        assert np.all(psd.component(c) == 0)
    assert rms_bending(spec, beam, support) == 0


def test_psd_nonnegative_and_linear(ref_model, fixture_spectrum):
    beam, support, ifm = ref_model
    grid = model_grid(beam, support, n=400)
    psd = phase_noise_psd(fixture_spectrum, beam, support, ifm, grid)
    psd10 = phase_noise_psd(fixture_spectrum.scaled(10.0), beam, support, ifm, grid)
    for c in psd.COMPONENTS:
        assert np.all(psd.component(c) >= 0)
        np.testing.assert_allclose(psd10.component(c), 10 * psd.component(c), rtol=1e-13)


def test_psd_rejects_grid_below_cutoff(ref_model, fixture_spectrum):
    beam, support, ifm = ref_model
    with pytest.raises(ValueError):
        phase_noise_psd(fixture_spectrum, beam, support, ifm, np.array([1.0, 10.0]))


def test_psd_symmetric_parts(ref_model, fixture_spectrum):
    # each end alone excites both parities; the Sagnac part comes from the odd one only
    beam, support, ifm = ref_model
    grid = model_grid(beam, support, n=300)
    psd = phase_noise_psd(fixture_spectrum, beam, support, ifm, grid)
    assert np.all(psd.sagnac > 0) and np.all(psd.bending > 0)


def test_sagnac_matches_closed_form_at_low_frequency(ref_model, fixture_spectrum):
    beam, support, ifm = ref_model
    beam = BeamSpec.from_omega0(omega0(beam), beam.grating_half_span, beam.grating_half_span)
    from railnoise.beam import SupportSpec

    support = SupportSpec.from_resonance(TWO_PI * 40.0, 16.0, beam)
    grid = np.geomspace(2.0, 15.0, 40)
    psd = phase_noise_psd(fixture_spectrum, beam, support, ifm, grid)
    s = np.sqrt(fixture_spectrum(grid))
    w = TWO_PI * grid
    approx = sum(
        np.abs(phase_transfer_approx(w, xp, xm, beam, support, ifm).sagnac) ** 2
        for xp, xm in ((s, 0 * s), (0 * s, s))
    )
    np.testing.assert_allclose(psd.sagnac, approx, rtol=0.05)


def test_fixture_peaks(ref_model, fixture_spectrum):
    beam, support, ifm = ref_model
    grid = model_grid(beam, support)
    psd = phase_noise_psd(fixture_spectrum, beam, support, ifm, grid)
    m = psd.total
    peaks = grid[1:-1][(m[1:-1] > m[:-2]) & (m[1:-1] > m[2:])]
    assert np.any(np.abs(peaks / 40.0 - 1) < 0.1)
    assert np.any(np.abs(peaks / 460.4 - 1) < 0.1)


def test_grid_refinement_converges(ref_model, fixture_spectrum):
    beam, support, ifm = ref_model
    coarse = phase_noise_psd(fixture_spectrum, beam, support, ifm, model_grid(beam, support, n=2000))
    fine = phase_noise_psd(fixture_spectrum, beam, support, ifm, model_grid(beam, support, n=4000))
    a = integrate_phase_variance(coarse)["total"]
    b = integrate_phase_variance(fine)["total"]
    assert abs(a - b) / b < 1e-3


def test_stiffer_rail_bends_less(ref_model, fixture_spectrum):
    beam, support, _ = ref_model
    stiff = BeamSpec.from_omega0(2 * omega0(beam), beam.half_length, beam.grating_half_span,
                                 beam.mass_per_length)
    f_max = 0.5 * omega0(beam) / TWO_PI
    soft = rms_bending(fixture_spectrum, beam, support, 2.0, f_max)
    hard = rms_bending(fixture_spectrum, stiff, support, 2.0, f_max)
    assert 0 < hard < soft


def test_csv_layout(ref_model, fixture_spectrum):
    beam, support, ifm = ref_model
    grid = model_grid(beam, support, n=50)
    text = phase_noise_psd(fixture_spectrum, beam, support, ifm, grid).to_csv()
    lines = text.splitlines()
    assert lines[0] == CSV_HEADER
    assert len(lines) == 1 + grid.size
    assert [float(v) for v in lines[1].split(",")][0] == pytest.approx(2.0)


@pytest.fixture(scope="module")
def coarse_run():
    from railnoise import EXAMPLE_CONFIG, FIXTURE_SPECTRUM
    from railnoise.config import load_config

    beam, support, ifm = load_config(EXAMPLE_CONFIG).build()
    spectrum = extend_constant(load_spectrum(FIXTURE_SPECTRUM), 1000.0)
    return beam, support, ifm, spectrum


@settings(max_examples=20, deadline=None)
@given(alpha=st.floats(1e-3, 1e3))
def test_variance_linear_in_input(coarse_run, alpha):
    beam, support, ifm, fixture_spectrum = coarse_run
    grid = model_grid(beam, support, n=200)
    base = integrate_phase_variance(phase_noise_psd(fixture_spectrum, beam, support, ifm, grid))
    scaled = integrate_phase_variance(phase_noise_psd(fixture_spectrum.scaled(alpha), beam, support, ifm, grid))
    for c in base:
        assert scaled[c] == pytest.approx(alpha * base[c], rel=1e-12)
