"""
Site-resolved densities derived from the band amplitudes.

Currents use e = hbar = 1.  The dipole current drops the physical prefactor
``omega c e d_ab`` and keeps only ``nu``, so its spectra carry line positions
and relative heights, not absolute amperes.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import ChainParams, DriveParams, WaveState

KINDS = ("inversion", "tunnel_current", "bond_current", "dipole_current", "population")


@dataclass
class SiteSeries:
    """One observable over the chain at a single instant.

    ``values`` has one entry per site, except for ``bond_current`` which has
    one per bond (``N - 1`` entries, entry ``j`` sitting between sites ``j`` and
    ``j + 1``).
    """

    values: np.ndarray
    tau: float
    kind: str

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown observable kind {self.kind!r}")

    def __len__(self):
        return self.values.size

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype)


def _amps(state):
    """Accept a WaveState or a pair of ``(..., N)`` amplitude arrays."""
    if isinstance(state, WaveState):
        return state.a, state.b, state.tau
    a, b = state
    return np.asarray(a), np.asarray(b), float("nan")


def inversion_density(state, chain: ChainParams | None = None) -> SiteSeries:
    """``w_j = (|a_j|^2 - |b_j|^2) / N``."""
    a, b, tau = _amps(state)
    n = a.shape[-1]
    return SiteSeries((np.abs(a) ** 2 - np.abs(b) ** 2) / n, tau, "inversion")


def _bond_hops(chain: ChainParams, n: int, drive: DriveParams | None, tau: float):
    t_a = np.full(n - 1, chain.t_a, dtype=np.complex128)
    t_b = np.full(n - 1, chain.t_b, dtype=np.complex128)
    if drive is not None and (drive.eta_a != 0 or drive.eta_b != 0):
        c = np.cos(drive.K * np.arange(n - 1) - drive.nu * tau + drive.phi)
        t_a = t_a - drive.eta_a * c
        t_b = t_b - drive.eta_b * c
    return t_a, t_b


def tunneling_current_two_point(state, chain: ChainParams, drive: DriveParams | None = None,
                                tau: float | None = None) -> SiteSeries:
    """Bond currents ``J_{j+1/2} = -i t^* a_{j+1}^* a_j + c.c.`` summed over bands.

    This is the current that closes the discrete continuity equation
    ``dP_j/dtau = -(J_{j+1/2} - J_{j-1/2})`` exactly.  Pass ``drive`` (and
    ``tau``) to include photon-assisted hopping of the full model.
    """
    a, b, t0 = _amps(state)
    n = a.shape[-1]
    if n < 2:
        raise ValueError("bond currents need at least two sites")
    tau = t0 if tau is None else tau
    hop_a, hop_b = _bond_hops(chain, n, drive, tau)
    ja = -1j * np.conj(hop_a) * np.conj(a[..., 1:]) * a[..., :-1]
    jb = -1j * np.conj(hop_b) * np.conj(b[..., 1:]) * b[..., :-1]
    return SiteSeries(2.0 * (ja + jb).real, tau, "bond_current")


def tunneling_current_symmetrized(state, chain: ChainParams) -> SiteSeries:
    """Site current ``-(i/2) (t^* psi_{j-1} - t psi_{j+1}) psi_j^* + c.c.`` per band.

    For real hopping this is the familiar ``-(i/2) t (psi_{j-1} - psi_{j+1})
    psi_j^* + c.c.``; in general it equals the mean of the two bond currents
    adjacent to site ``j``.  Missing neighbours at the chain ends count as zero
    amplitude.
    """
    a, b, tau = _amps(state)
    shape = a.shape[:-1] + (1,)
    pad = np.zeros(shape, dtype=np.complex128)

    def band(x, t):
        xp = np.concatenate([pad, x, pad], axis=-1)
        diff = np.conj(t) * xp[..., :-2] - t * xp[..., 2:]
        return (-0.5j * diff * np.conj(x)) * 2.0

    total = band(a, chain.t_a) + band(b, chain.t_b)
    return SiteSeries(total.real, tau, "tunnel_current")


def dipole_current(state, chain: ChainParams | None = None, drive: DriveParams | None = None) -> SiteSeries:
    """``J_j = -i nu a_j^* b_j + c.c.`` with ``nu`` taken from ``drive`` (default 1)."""
    a, b, tau = _amps(state)
    nu = 1.0 if drive is None else drive.nu
    return SiteSeries(2.0 * (-1j * nu * np.conj(a) * b).real, tau, "dipole_current")


def population(state) -> SiteSeries:
    a, b, tau = _amps(state)
    return SiteSeries(np.abs(a) ** 2 + np.abs(b) ** 2, tau, "population")


@dataclass(frozen=True)
class Diagnostics:
    total_norm: float
    population_a: float
    population_b: float
    centroid: float
    edge_leakage: float


def diagnostics(state, edge_sites: int = 2) -> Diagnostics:
    """Norm, band populations, centroid and population on the outermost sites."""
    a, b, _ = _amps(state)
    pa = np.abs(a) ** 2
    pb = np.abs(b) ** 2
    pop = pa + pb
    total = float(pop.sum())
    n = pop.size
    centroid = float(np.dot(np.arange(n), pop))
    if n <= 2 * edge_sites:
        edge = total
    else:
        edge = float(pop[:edge_sites].sum() + pop[-edge_sites:].sum())
    return Diagnostics(total, float(pa.sum()), float(pb.sum()), centroid, edge)
