"""
Amplitude spectra of recorded observables, peak picking and expected lines.

Frequencies are angular and in units of omega_0, matching the dimensionless
time ``tau``: bin ``k`` of an ``M``-sample record with spacing ``dtau`` padded
by ``p`` sits at ``2 pi k / (M dtau p)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dynamics import Trajectory
from .model import DriveParams
from .observables import (dipole_current, inversion_density, population,
                          tunneling_current_symmetrized)

MIN_SAMPLES = 16
DEFAULT_WINDOW = "hann"
DEFAULT_ZERO_PAD = 4
DEFAULT_THRESHOLD = 0.05
SPATIAL_SUM = "sum"

_OBSERVABLES = {
    "inversion": lambda traj, amps: inversion_density(amps).values,
    "tunnel_current": lambda traj, amps: tunneling_current_symmetrized(amps, traj.chain).values,
    "dipole_current": lambda traj, amps: dipole_current(amps, traj.chain, traj.drive).values,
    "population": lambda traj, amps: population(amps).values,
}


@dataclass
class TimeSeriesRecord:
    tau_grid: np.ndarray
    values: np.ndarray
    kind: str
    probe: object  # site index or SPATIAL_SUM

    def __post_init__(self):
        self.tau_grid = np.asarray(self.tau_grid, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.tau_grid.shape != self.values.shape:
            raise ValueError("tau grid and values differ in length")

    def __len__(self):
        return self.values.size

    @property
    def spacing(self) -> float:
        return float(self.tau_grid[1] - self.tau_grid[0])

    @property
    def label(self) -> str:
        probe = "sum" if self.probe == SPATIAL_SUM else f"site{self.probe}"
        return f"{self.kind}_{probe}"


@dataclass
class Spectrum:
    freq_grid: np.ndarray
    amplitude: np.ndarray
    resolution: float
    peaks: list = field(default_factory=list)
    floor: float = 0.0  # amplitudes at or below this are rounding noise

    def bin_of(self, freq: float) -> int:
        return int(round(freq / self.resolution))

    def dominant_peak(self):
        """Highest detected peak as ``(frequency, amplitude)``, or ``None``."""
        if not self.peaks:
            return None
        return max(self.peaks, key=lambda p: p[1])

    def peaks_near(self, freq: float, bins: float):
        return [p for p in self.peaks if abs(p[0] - freq) <= bins * self.resolution + 1e-15]


def observable_grid(trajectory: Trajectory, kind: str) -> np.ndarray:
    """Space-time array ``(n_records, N)`` of an observable along a trajectory."""
    try:
        fn = _OBSERVABLES[kind]
    except KeyError:
        raise ValueError(f"unknown observable {kind!r}; choose from {sorted(_OBSERVABLES)}") from None
    return fn(trajectory, (trajectory.a, trajectory.b))


def min_dipole_record_every(d_tau: float, nu: float) -> int:
    """Largest ``record_every`` that keeps the Nyquist frequency above ``1.2 nu``."""
    if nu == 0:
        return 2**31 - 1
    # Nyquist = pi / (record_every * d_tau) > 1.2 |nu|
    r = int(np.floor(np.pi / (1.2 * abs(nu) * d_tau)))
    while r > 1 and np.pi / (r * d_tau) <= 1.2 * abs(nu):
        r -= 1
    return max(r, 1)


def record_series(trajectory: Trajectory, kind: str, probe=80) -> TimeSeriesRecord:
    """Scalar time series of one observable at a site (or summed over sites)."""
    if kind == "dipole_current":
        nyquist = np.pi / trajectory.record_spacing
        if nyquist <= 1.2 * abs(trajectory.drive.nu):
            raise ValueError(
                f"dipole series needs Nyquist > 1.2 nu; record spacing {trajectory.record_spacing} is too coarse")
    n = trajectory.chain.n_sites
    if probe != SPATIAL_SUM:
        if isinstance(probe, bool) or int(probe) != probe or not 0 <= probe < n:
            raise ValueError(f"probe site {probe!r} outside chain of {n} sites")
        probe = int(probe)
    grid = observable_grid(trajectory, kind)
    values = grid.sum(axis=1) if probe == SPATIAL_SUM else grid[:, probe]
    return TimeSeriesRecord(trajectory.tau_grid.copy(), values, kind, probe)


def _window(name: str, m: int) -> np.ndarray:
    if name == "hann":
        return np.hanning(m)
    if name == "rect":
        return np.ones(m)
    raise ValueError(f"unknown window {name!r}")


def amplitude_spectrum(series, window: str = DEFAULT_WINDOW, zero_pad_factor: int = DEFAULT_ZERO_PAD,
                       remove_mean: bool = True, rel_threshold: float | None = DEFAULT_THRESHOLD,
                       d_tau: float | None = None) -> Spectrum:
    """One-sided amplitude spectrum.

    ``series`` is a :class:`TimeSeriesRecord` or a plain array (then ``d_tau``
    is required).  Amplitudes are scaled by the window's coherent gain so a
    line ``A cos(w tau)`` shows up with height close to ``A``.  Peaks above
    ``rel_threshold`` are attached; pass ``None`` to skip peak picking.
    """
    if isinstance(series, TimeSeriesRecord):
        x = series.values
        if series.tau_grid.size >= 2:
            steps = np.diff(series.tau_grid)
            if not np.allclose(steps, steps[0], rtol=1e-9, atol=0):
                raise ValueError("series must be uniformly sampled")
            d_tau = float(steps[0])
    else:
        x = np.asarray(series, dtype=float)
        if d_tau is None:
            raise ValueError("d_tau is required for a bare array")
    m = x.size
    floor = 1e-12 * float(np.max(np.abs(x))) if m else 0.0
    if m < MIN_SAMPLES:
        raise ValueError(f"need at least {MIN_SAMPLES} samples, got {m}")
    if int(zero_pad_factor) != zero_pad_factor or zero_pad_factor < 1:
        raise ValueError("zero_pad_factor must be a positive integer")
    if remove_mean:
        x = x - x.mean()
    w = _window(window, m)
    n_fft = m * int(zero_pad_factor)
    X = np.fft.rfft(x * w, n=n_fft)
    amp = np.abs(X) / w.sum()
    amp[1:] *= 2.0
    if n_fft % 2 == 0:
        amp[-1] /= 2.0
    resolution = 2.0 * np.pi / (n_fft * d_tau)
    freqs = resolution * np.arange(amp.size)
    spec = Spectrum(freqs, amp, resolution, floor=floor)
    if rel_threshold is not None:
        spec.peaks = find_peaks(spec, rel_threshold)
    return spec


def find_peaks(spectrum: Spectrum, rel_threshold: float = DEFAULT_THRESHOLD):
    """Strict local maxima at or above ``rel_threshold * max``, sorted by frequency.

    The end bins count as maxima when they exceed their single neighbour, so
    a dc line at zero frequency can be reported.  Nothing is reported when
    the whole spectrum sits at or below ``spectrum.floor`` (e.g. the rounding
    residue left after removing the mean of a constant series).
    """
    amp = np.asarray(spectrum.amplitude, dtype=float)
    if amp.size == 0:
        return []
    top = amp.max()
    if top <= max(spectrum.floor, 0.0):
        return []
    left = np.concatenate([[-np.inf], amp[:-1]])
    right = np.concatenate([amp[1:], [-np.inf]])
    mask = (amp > left) & (amp > right) & (amp >= rel_threshold * top)
    idx = np.flatnonzero(mask)
    return [(float(spectrum.freq_grid[i]), float(amp[i])) for i in idx]


REGIMES = ("a", "b", "c", "d", "e", "f")


def predicted_lines(regime: str, kind: str, drive: DriveParams, order: int = 1) -> list:
    """Frequencies where lines are expected for a regime and observable.

    ``order`` bounds the Bloch index ``m`` of harmonics (tunnel current) and
    sidebands (multiplets).
    """
    if regime not in REGIMES:
        raise ValueError(f"unknown regime {regime!r}")
    if kind not in ("inversion", "dipole_current", "tunnel_current"):
        raise ValueError(f"no line prediction for observable {kind!r}")
    wb, wr, nu = abs(drive.omega_B), abs(drive.omega_R), drive.nu
    order = int(order)
    ms = range(-order, order + 1)

    if kind == "tunnel_current":
        lines = [m * wb for m in range(order + 1)]
    elif regime == "a":
        lines = [wb] if kind == "inversion" else []
    elif regime == "b":
        lines = [wr] if kind == "inversion" else [nu - wr, nu + wr]
    elif regime == "d":
        if kind == "inversion":
            lines = [wr - wb, wr, wr + wb]
        else:
            lines = [c + m * wb for c in (nu - wr, nu, nu + wr) for m in (-1, 0, 1)]
    else:  # c, e, f: multiplets with Bloch spacing
        if kind == "inversion":
            lines = [wr + m * wb for m in ms]
        else:
            lines = [nu + s * (wr + m * wb) for s in (-1, 1) for m in ms] + [nu + m * wb for m in ms]
    return sorted({round(f, 15) for f in lines if f >= 0})
