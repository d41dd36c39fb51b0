"""
Parameter space and initial states for a tilted, driven two-band chain.

Units: hbar = 1, e = 1 and the transition frequency omega_0 = 1, so every
energy is measured in hbar*omega_0 and time is tau = omega_0 * t.  The two
bands sit at +delta_eps (excited, ``a``) and -delta_eps (ground, ``b``), hence
``delta_eps = 0.5`` puts the gap at exactly one frequency unit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

ELEMENTARY_CHARGE = 1.602176634e-19  # C
HBAR = 1.054571817e-34  # J s

#: Tolerance used when checking that a state is normalized.
NORM_TOL = 1e-8


def _finite(name: str, value) -> None:
    if not np.all(np.isfinite(np.asarray(value))):
        raise ValueError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class ChainParams:
    """Static description of the chain.

    Parameters
    ----------
    n_sites : int
        Number of emitters N.
    delta_eps : float
        Half the band gap, in hbar*omega_0.
    t_a, t_b : complex
        Nearest-neighbour tunneling amplitudes of the excited and ground bands
        (coefficient of the ``j+1`` neighbour; the ``j-1`` neighbour gets the
        conjugate).
    mu_a, mu_b : float
        Diagonal ac-drive amplitudes from the permanent dipoles d_aa, d_bb.
    s_a, s_b : float
        Static diagonal shifts from the dc field acting on d_aa, d_bb.
    lattice_const_nm : float
        Lattice period, only used for unit conversion.
    """

    n_sites: int
    delta_eps: float = 0.5
    t_a: complex = 3.5e-2
    t_b: complex = 3.5e-2
    mu_a: float = 0.0
    mu_b: float = 0.0
    s_a: float = 0.0
    s_b: float = 0.0
    lattice_const_nm: float = 20.0

    def __post_init__(self):
        if isinstance(self.n_sites, bool) or int(self.n_sites) != self.n_sites or self.n_sites < 1:
            raise ValueError(f"n_sites must be a positive integer, got {self.n_sites!r}")
        object.__setattr__(self, "n_sites", int(self.n_sites))
        for name in ("delta_eps", "t_a", "t_b", "mu_a", "mu_b", "s_a", "s_b", "lattice_const_nm"):
            _finite(name, getattr(self, name))
        if self.delta_eps < 0:
            raise ValueError("delta_eps must be non-negative")
        if self.lattice_const_nm <= 0:
            raise ValueError("lattice_const_nm must be positive")

    @property
    def inversion_symmetric(self) -> bool:
        return self.mu_a == self.mu_b == self.s_a == self.s_b == 0

    def replace(self, **changes) -> "ChainParams":
        return replace(self, **changes)


@dataclass(frozen=True)
class DriveParams:
    """External fields in dimensionless form.

    ``omega_B`` is the dc tilt per site, ``omega_R`` the chain Rabi frequency,
    ``nu`` the drive frequency and ``K = (k.e) a`` the phase advance of the
    travelling ac wave from one site to the next.  ``eta_a``/``eta_b`` scale the
    photon-assisted part of the hopping.
    """

    omega_B: float = 0.0
    omega_R: float = 0.0
    nu: float = 1.0
    K: float = 0.0
    phi: float = 0.0
    eta_a: complex = 0.0
    eta_b: complex = 0.0

    def __post_init__(self):
        for name in ("omega_B", "omega_R", "nu", "K", "phi", "eta_a", "eta_b"):
            _finite(name, getattr(self, name))

    def replace(self, **changes) -> "DriveParams":
        return replace(self, **changes)


@dataclass
class WaveState:
    """Site amplitudes of both bands at time ``tau``."""

    a: np.ndarray
    b: np.ndarray
    tau: float = 0.0

    def __post_init__(self):
        self.a = np.asarray(self.a, dtype=np.complex128)
        self.b = np.asarray(self.b, dtype=np.complex128)
        if self.a.ndim != 1 or self.a.shape != self.b.shape:
            raise ValueError(f"band arrays must be 1-D and equal length, got {self.a.shape} and {self.b.shape}")

    @property
    def n_sites(self) -> int:
        return self.a.size

    @property
    def norm(self) -> float:
        return float(np.sum(np.abs(self.a) ** 2) + np.sum(np.abs(self.b) ** 2))

    @property
    def vector(self) -> np.ndarray:
        """Stacked amplitudes ``[a_0..a_{N-1}, b_0..b_{N-1}]``."""
        return np.concatenate([self.a, self.b])

    @classmethod
    def from_vector(cls, psi, tau: float = 0.0) -> "WaveState":
        psi = np.asarray(psi, dtype=np.complex128)
        if psi.ndim != 1 or psi.size % 2:
            raise ValueError("stacked state vector must have even length")
        n = psi.size // 2
        return cls(psi[:n].copy(), psi[n:].copy(), tau)

    def copy(self) -> "WaveState":
        return WaveState(self.a.copy(), self.b.copy(), self.tau)

    def with_phase(self, chi: float) -> "WaveState":
        ph = np.exp(1j * chi)
        return WaveState(self.a * ph, self.b * ph, self.tau)


def normalize(state: WaveState) -> WaveState:
    """Return ``state`` rescaled to unit norm.

    A state that is already normalized to machine precision is returned
    unchanged (bit for bit), so normalization is idempotent.
    """
    _finite("state amplitudes", state.vector)
    norm = state.norm
    if norm <= 0:
        raise ValueError("cannot normalize the zero state")
    if norm == 1.0:
        return state.copy()
    scale = 1.0 / math.sqrt(norm)
    return WaveState(state.a * scale, state.b * scale, state.tau)


def _envelope(n_sites: int, center: float, width_sites: float, momentum: float) -> np.ndarray:
    for name, val in (("center", center), ("width_sites", width_sites), ("momentum", momentum)):
        _finite(name, val)
    if width_sites <= 0:
        raise ValueError(f"width_sites must be positive, got {width_sites}")
    if not 0 <= center < n_sites:
        raise ValueError(f"center must lie in [0, {n_sites}), got {center}")
    j = np.arange(n_sites, dtype=float)
    env = np.exp(-((j - center) ** 2) / width_sites**2)
    return env * np.exp(1j * momentum * j)


def gaussian_packet(chain: ChainParams, center: float, width_sites: float,
                    momentum: float = 0.0, band: str = "excited") -> WaveState:
    """Single-band Gaussian packet ``g exp(-(j-j')^2/w^2) exp(i h j)``.

    The other band is left empty and ``g`` is fixed by normalization.
    """
    env = _envelope(chain.n_sites, center, width_sites, momentum)
    zeros = np.zeros(chain.n_sites, dtype=np.complex128)
    if band == "excited":
        state = WaveState(env, zeros)
    elif band == "ground":
        state = WaveState(zeros, env)
    else:
        raise ValueError(f"band must be 'excited' or 'ground', got {band!r}")
    return normalize(state)


def trapped_packet(chain: ChainParams, center: float, width_sites: float,
                   momentum: float = 0.0) -> WaveState:
    """Gaussian packet carrying the trapped two-component spinor.

    Every site holds ``(sqrt(t_b/t_a), 1)`` times the Gaussian envelope and the
    plane-wave factor ``exp(i h j)``.
    """
    if chain.t_a == 0:
        raise ValueError("trapped packet needs a nonzero excited-band tunneling t_a")
    ratio = np.sqrt(complex(chain.t_b) / complex(chain.t_a))
    if ratio.imag == 0:
        ratio = ratio.real
    env = _envelope(chain.n_sites, center, width_sites, momentum)
    return normalize(WaveState(ratio * env, env.copy()))


def omega_b_from_physical(lattice_const_nm: float, e_dc_kv_cm: float, gap_ev: float) -> float:
    """Bloch frequency ``e a E_dc / (hbar omega_0)`` with ``hbar omega_0 = gap_ev``.

    >>> round(omega_b_from_physical(20.0, 1.95, 1.0), 6)
    0.0039
    """
    for name, val in (("lattice_const_nm", lattice_const_nm), ("e_dc_kv_cm", e_dc_kv_cm), ("gap_ev", gap_ev)):
        _finite(name, val)
    if lattice_const_nm <= 0 or gap_ev <= 0 or e_dc_kv_cm < 0:
        raise ValueError("lattice constant and gap must be positive, field non-negative")
    a_m = lattice_const_nm * 1e-9
    e_v_per_m = e_dc_kv_cm * 1e5
    gap_j = gap_ev * ELEMENTARY_CHARGE
    return ELEMENTARY_CHARGE * a_m * e_v_per_m / gap_j


def tau_to_seconds(tau: float, gap_ev: float) -> float:
    """Convert dimensionless time to seconds for a gap ``hbar omega_0 = gap_ev``."""
    if gap_ev <= 0:
        raise ValueError("gap_ev must be positive")
    return tau * HBAR / (gap_ev * ELEMENTARY_CHARGE)
