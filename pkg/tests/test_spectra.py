import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rabibloch import (ChainParams, DriveParams, amplitude_spectrum, find_peaks, gaussian_packet,
                       predicted_lines, propagate, record_series)
from rabibloch.spectra import (Spectrum, TimeSeriesRecord, min_dipole_record_every)

WB, WR = 3.9e-3, 2.5e-2


def series(values, dt):
    values = np.asarray(values, dtype=float)
    return TimeSeriesRecord(dt * np.arange(values.size), values, "inversion", 80)


def test_bloch_cosine_round_trip():
    dt = 0.02
    tau = np.arange(0, 4 * 2 * math.pi / WB, dt)
    spec = amplitude_spectrum(series(np.cos(WB * tau), dt))
    f, a = spec.dominant_peak()
    assert abs(f - WB) <= spec.resolution
    assert a == pytest.approx(1.0, rel=0.05)


def test_constant_series_has_no_peaks():
    spec = amplitude_spectrum(series(np.full(500, 0.3), 0.1))
    assert spec.peaks == []


def test_two_equal_cosines():
    dt = 0.5
    tau = np.arange(4000) * dt
    x = np.cos(0.2 * tau) + np.cos(0.5 * tau)
    spec = amplitude_spectrum(series(x, dt), "hann")
    assert len(spec.peaks) == 2
    (f1, a1), (f2, a2) = spec.peaks
    assert abs(f1 - 0.2) <= spec.resolution and abs(f2 - 0.5) <= spec.resolution
    assert abs(a1 - a2) / max(a1, a2) < 0.05


def test_parseval_rect_window():
    rng = np.random.default_rng(3)
    dt = 0.3
    tau = np.arange(1001) * dt
    x = 0.7 * np.cos(0.4 * tau) + 0.2 * np.sin(1.3 * tau) + 0.1 * rng.normal(size=tau.size) + 0.05
    spec = amplitude_spectrum(series(x, dt), "rect", 1, remove_mean=False)
    amp = spec.amplitude
    m = x.size
    power_freq = amp[0] ** 2 + 0.5 * np.sum(amp[1:] ** 2)
    if m % 2 == 0:
        power_freq += 0.5 * amp[-1] ** 2
    assert power_freq == pytest.approx(np.mean(x**2), rel=0.01)


def test_frequency_grid_spans_to_nyquist():
    dt = 0.02
    spec = amplitude_spectrum(series(np.sin(np.arange(256)), dt), zero_pad_factor=4)
    assert spec.freq_grid[0] == 0
    assert spec.freq_grid[-1] == pytest.approx(math.pi / dt, rel=1e-12)
    assert spec.resolution == pytest.approx(2 * math.pi / (256 * 4 * dt))


def test_spectrum_input_checks():
    with pytest.raises(ValueError):
        amplitude_spectrum(series(np.ones(15), 1.0))
    with pytest.raises(ValueError):
        amplitude_spectrum(TimeSeriesRecord(np.r_[0, np.cumsum(np.linspace(1, 2, 40))], np.ones(41),
                                            "inversion", 0))
    with pytest.raises(ValueError):
        amplitude_spectrum(np.ones(40))
    with pytest.raises(ValueError):
        amplitude_spectrum(series(np.ones(40), 1.0), window="kaiser")
    with pytest.raises(ValueError):
        amplitude_spectrum(series(np.ones(40), 1.0), zero_pad_factor=0)


def test_single_cosine_single_peak():
    tau = np.arange(3000) * 0.1
    spec = amplitude_spectrum(series(np.cos(0.77 * tau), 0.1), rel_threshold=None)
    peaks = find_peaks(spec, 0.1)
    assert len(peaks) == 1


def test_find_peaks_degenerate_cases():
    grid = np.arange(6.0)
    assert find_peaks(Spectrum(grid, np.zeros(6), 1.0), 0.05) == []
    amp = np.array([0.0, 2.0, 1.0, 2.0, 0.5, 1.9])
    assert find_peaks(Spectrum(grid, amp, 1.0), 1.0) == [(1.0, 2.0), (3.0, 2.0)]
    # end bins are allowed to be maxima
    assert (5.0, 1.9) in find_peaks(Spectrum(grid, amp, 1.0), 0.5)
    assert (0.0, 3.0) in find_peaks(Spectrum(grid, np.array([3.0, 1, 0, 0, 0, 0]), 1.0), 0.5)


@given(seed=st.integers(0, 2**32 - 1), m=st.integers(16, 400), pad=st.integers(1, 5),
       window=st.sampled_from(["hann", "rect"]), thr=st.floats(0.01, 1.0))
def test_peaks_sorted_on_grid_and_reproducible(seed, m, pad, window, thr):
    rng = np.random.default_rng(seed)
    x = rng.normal(size=m)
    s1 = amplitude_spectrum(series(x, 0.1), window, pad, rel_threshold=thr)
    s2 = amplitude_spectrum(series(x.copy(), 0.1), window, pad, rel_threshold=thr)
    assert s1.peaks == s2.peaks
    assert np.all(s1.amplitude >= 0)
    freqs = [p[0] for p in s1.peaks]
    assert freqs == sorted(freqs)
    assert all(f in set(s1.freq_grid.tolist()) for f in freqs)
    assert all(a >= thr * s1.amplitude.max() for _, a in s1.peaks)


def test_predicted_lines_examples():
    drive = DriveParams(omega_B=WB, omega_R=WR)
    np.testing.assert_allclose(predicted_lines("d", "inversion", drive), [2.11e-2, 2.5e-2, 2.89e-2], atol=1e-15)
    np.testing.assert_allclose(predicted_lines("b", "dipole_current", DriveParams(omega_R=WR)),
                               [0.975, 1.025], atol=1e-15)
    np.testing.assert_allclose(predicted_lines("a", "tunnel_current", DriveParams(omega_B=WB), order=2),
                               [0.0, 3.9e-3, 7.8e-3], atol=1e-15)
    assert predicted_lines("a", "inversion", drive) == [WB]
    assert len(predicted_lines("e", "inversion", drive, order=3)) == 7


def test_predicted_lines_rejects_unknown():
    with pytest.raises(ValueError):
        predicted_lines("z", "inversion", DriveParams())
    with pytest.raises(ValueError):
        predicted_lines("a", "population", DriveParams())


@pytest.fixture(scope="module")
def short_traj():
    chain = ChainParams(128)
    s = gaussian_packet(chain, 80, 20)
    return propagate(s, 20.0, 0.02, chain, DriveParams(omega_B=WB, omega_R=WR), record_every=5)


def test_record_series_initial_values(short_traj):
    s0 = short_traj.state(0)
    site = record_series(short_traj, "inversion", 80)
    assert site.values[0] == pytest.approx(abs(s0.a[80]) ** 2 / 128, rel=1e-14)
    total = record_series(short_traj, "inversion", "sum")
    assert total.values[0] == pytest.approx(1 / 128, rel=1e-12)
    assert total.label == "inversion_sum" and site.label == "inversion_site80"


def test_record_series_checks(short_traj):
    with pytest.raises(ValueError):
        record_series(short_traj, "inversion", 128)
    with pytest.raises(ValueError):
        record_series(short_traj, "entropy", 80)
    chain = ChainParams(8)
    coarse = propagate(gaussian_packet(chain, 4, 2), 40.0, 0.02, chain, DriveParams(), record_every=200)
    with pytest.raises(ValueError):
        record_series(coarse, "dipole_current", 4)


def test_dipole_sampling_limit():
    r = min_dipole_record_every(0.02, 1.0)
    assert math.pi / (r * 0.02) > 1.2
    assert math.pi / ((r + 1) * 0.02) <= 1.2


def test_regime_d_triplet_central_line_is_largest(preset_run):
    m = preset_run("d")
    inv = m.spectra["inversion_site80"]
    drive = m.trajectory.drive
    heights = []
    for f in predicted_lines("d", "inversion", drive):
        near = inv.peaks_near(f, 2)
        assert near, f"no detected line within two bins of {f}"
        heights.append(max(a for _, a in near))
    assert heights[1] == max(heights)


def test_tunnel_current_has_no_mean_over_whole_bloch_periods(preset_run):
    # real Hamiltonian and real initial packet: J(-tau) = -J(tau), so the
    # current averages to zero over every full Bloch period
    rec = preset_run("a").series["tunnel_current_site80"]
    per = int(round(2 * math.pi / WB / rec.spacing))
    for k in (1, 2):
        chunk = rec.values[:k * per]
        assert abs(chunk.mean()) < 1e-5 * chunk.std()
