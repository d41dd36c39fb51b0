"""
Equations of motion and time propagation.

Three model variants share one compiled right-hand side:

* ``full``        -- permanent-dipole terms (``mu``, ``s``) and photon-assisted
  hopping (``eta``) included;
* ``simplified``  -- inversion-symmetric emitters without photon assistance;
* ``rwa``         -- as ``simplified`` but only the co-rotating half of the
  interband drive is kept, in the lab frame.

With ``theta_j = K j - nu tau + phi`` the simplified equations read::

    i da_j/dtau = (delta_eps - omega_B j) a_j + t_a a_{j+1} + t_a^* a_{j-1} - omega_R cos(theta_j) b_j
    i db_j/dtau = (-delta_eps - omega_B j) b_j + t_b b_{j+1} + t_b^* b_{j-1} - omega_R cos(theta_j) a_j

Amplitudes beyond the chain ends are zero (hard walls).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from . import _kernel
from .model import ChainParams, DriveParams, WaveState

DEFAULT_D_TAU = 0.02
MAX_NORM_DRIFT = 1e-6
ORACLE_MAX_SITES = 16


class ModelVariant(str, enum.Enum):
    FULL = "full"
    SIMPLIFIED = "simplified"
    RWA = "rwa"


class NumericalAbort(RuntimeError):
    """Propagation stopped because the state became untrustworthy."""

    def __init__(self, message: str, tau: float):
        super().__init__(f"{message} at tau={tau:.6g}")
        self.tau = tau


class DivergenceError(NumericalAbort):
    pass


class NormDriftError(NumericalAbort):
    pass


def _variant(variant) -> ModelVariant:
    return variant if isinstance(variant, ModelVariant) else ModelVariant(str(variant))


def _pack(chain: ChainParams, drive: DriveParams, variant, energy_shift: float = 0.0):
    variant = _variant(variant)
    full = variant is ModelVariant.FULL
    rp = np.array([
        chain.delta_eps, drive.omega_B, drive.omega_R, drive.nu, drive.K, drive.phi,
        chain.s_a if full else 0.0, chain.s_b if full else 0.0,
        chain.mu_a if full else 0.0, chain.mu_b if full else 0.0,
        energy_shift,
    ], dtype=np.float64)
    cp = np.array([
        chain.t_a, chain.t_b,
        drive.eta_a if full else 0.0, drive.eta_b if full else 0.0,
    ], dtype=np.complex128)
    coupling = _kernel.RWA_DRIVE if variant is ModelVariant.RWA else _kernel.COS_DRIVE
    return rp, cp, coupling


def _check_sites(state: WaveState, chain: ChainParams) -> None:
    if state.n_sites != chain.n_sites:
        raise ValueError(f"state has {state.n_sites} sites but chain has {chain.n_sites}")


def rhs(state: WaveState, tau: float, chain: ChainParams, drive: DriveParams,
        variant=ModelVariant.SIMPLIFIED, energy_shift: float = 0.0):
    """Time derivatives ``(da/dtau, db/dtau)`` of both bands.

    ``energy_shift`` is subtracted from every diagonal element; it only
    changes the global phase of the solution.
    """
    _check_sites(state, chain)
    rp, cp, coupling = _pack(chain, drive, variant, energy_shift)
    da = np.empty(chain.n_sites, dtype=np.complex128)
    db = np.empty(chain.n_sites, dtype=np.complex128)
    _kernel.rhs_into(state.a, state.b, float(tau), rp, cp, coupling, da, db)
    return da, db


def hamiltonian_matrix(tau: float, chain: ChainParams, drive: DriveParams,
                       variant=ModelVariant.SIMPLIFIED) -> np.ndarray:
    """Dense ``2N x 2N`` Hamiltonian in the ``[a_0..a_{N-1}, b_0..b_{N-1}]`` basis.

    Built directly from the matrix elements, independently of the compiled
    right-hand side, so it can serve as a cross-check.
    """
    variant = _variant(variant)
    n = chain.n_sites
    full = variant is ModelVariant.FULL
    j = np.arange(n)
    theta = drive.K * j - drive.nu * tau + drive.phi
    c = np.cos(theta)
    H = np.zeros((2 * n, 2 * n), dtype=np.complex128)

    bands = ((0, chain.delta_eps, chain.t_a, chain.s_a, chain.mu_a, drive.eta_a),
             (n, -chain.delta_eps, chain.t_b, chain.s_b, chain.mu_b, drive.eta_b))
    for off, eps, t, s, mu, eta in bands:
        if not full:
            s = mu = eta = 0.0
        diag = eps - drive.omega_B * j - s - mu * c
        H[off + j, off + j] = diag
        for site in range(n - 1):
            hop = t - eta * c[site]
            H[off + site, off + site + 1] = hop
            H[off + site + 1, off + site] = np.conj(hop)

    if variant is ModelVariant.RWA:
        g = 0.5 * drive.omega_R * np.exp(1j * theta)
    else:
        g = drive.omega_R * c
    H[j, n + j] = -g
    H[n + j, j] = -np.conj(g)
    return H


def step_rk4(state: WaveState, tau: float, d_tau: float, chain: ChainParams,
             drive: DriveParams, variant=ModelVariant.SIMPLIFIED,
             energy_shift: float = 0.0) -> WaveState:
    """One classical fourth-order Runge-Kutta step from ``tau`` to ``tau + d_tau``."""
    _check_sites(state, chain)
    if not d_tau > 0:
        raise ValueError(f"d_tau must be positive, got {d_tau}")
    rp, cp, coupling = _pack(chain, drive, variant, energy_shift)
    n = chain.n_sites
    out_a = np.empty(n, dtype=np.complex128)
    out_b = np.empty(n, dtype=np.complex128)
    work = np.empty((10, n), dtype=np.complex128)
    _kernel.rk4_step_into(state.a, state.b, float(tau), float(d_tau), rp, cp, coupling, out_a, out_b, work)
    if not (np.all(np.isfinite(out_a)) and np.all(np.isfinite(out_b))):
        raise DivergenceError("non-finite amplitude", tau + d_tau)
    return WaveState(out_a, out_b, tau + d_tau)


@dataclass
class Trajectory:
    """States recorded on a uniform time grid.

    ``a`` and ``b`` have shape ``(n_records, n_sites)``; row ``i`` belongs to
    ``tau_grid[i]``.
    """

    tau_grid: np.ndarray
    a: np.ndarray
    b: np.ndarray
    chain: ChainParams
    drive: DriveParams
    variant: ModelVariant
    d_tau: float
    record_every: int
    norms: np.ndarray
    final: WaveState
    meta: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return self.tau_grid.size

    @property
    def record_spacing(self) -> float:
        return self.d_tau * self.record_every

    def state(self, i: int) -> WaveState:
        return WaveState(self.a[i].copy(), self.b[i].copy(), float(self.tau_grid[i]))

    def states(self):
        for i in range(len(self)):
            yield self.state(i)

    @property
    def norm_drift(self) -> float:
        """Largest ``|norm - 1|`` over the recorded states."""
        return float(np.max(np.abs(self.norms - 1.0)))


def propagate(state0: WaveState, tau_end: float, d_tau: float, chain: ChainParams,
              drive: DriveParams, variant=ModelVariant.SIMPLIFIED, record_every: int = 1,
              max_drift: float = MAX_NORM_DRIFT) -> Trajectory:
    """Integrate from ``state0.tau`` to ``tau_end`` with fixed-step RK4.

    Every ``record_every``-th state is stored (the initial state always is).
    Raises :class:`NormDriftError` once ``|norm - norm0|`` exceeds
    ``max_drift`` and :class:`DivergenceError` on a non-finite amplitude.

    The tilt is integrated relative to the initial centroid of the packet.  This
    only multiplies the solution by a global phase, which is removed again
    before states are stored, but it keeps the generator's eigenvalues small
    and with them the RK4 norm loss.
    """
    _check_sites(state0, chain)
    variant = _variant(variant)
    tau0 = float(state0.tau)
    if not tau_end > tau0:
        raise ValueError(f"tau_end must exceed the start time {tau0}, got {tau_end}")
    if not d_tau > 0:
        raise ValueError(f"d_tau must be positive, got {d_tau}")
    if int(record_every) != record_every or record_every < 1:
        raise ValueError(f"record_every must be a positive integer, got {record_every}")
    record_every = int(record_every)

    n_steps = int(round((tau_end - tau0) / d_tau))
    if n_steps < 1:
        raise ValueError("tau_end - tau0 is shorter than one step")
    n_rec = n_steps // record_every + 1

    pop = np.abs(state0.a) ** 2 + np.abs(state0.b) ** 2
    centroid = float(np.dot(np.arange(chain.n_sites), pop) / pop.sum())
    shift = -drive.omega_B * centroid

    rp, cp, coupling = _pack(chain, drive, variant, shift)
    n = chain.n_sites
    rec_a = np.zeros((n_rec, n), dtype=np.complex128)
    rec_b = np.zeros((n_rec, n), dtype=np.complex128)
    norms = np.zeros(n_rec)
    fin_a = np.empty(n, dtype=np.complex128)
    fin_b = np.empty(n, dtype=np.complex128)
    norm0 = state0.norm
    status, last = _kernel.rk4_run(state0.a, state0.b, tau0, n_steps, record_every, float(d_tau),
                                   rp, cp, coupling, float(max_drift * norm0), rec_a, rec_b,
                                   norms, fin_a, fin_b)
    if status == _kernel.NONFINITE:
        raise DivergenceError("non-finite amplitude", tau0 + last * d_tau)
    if status == _kernel.DRIFT:
        raise NormDriftError(f"norm drift above {max_drift:g} (step too large?)", tau0 + last * d_tau)

    spacing = record_every * d_tau
    tau_grid = tau0 + spacing * np.arange(n_rec)
    # undo the gauge shift: psi = exp(-i shift (tau - tau0)) psi_shifted
    phase = np.exp(-1j * shift * (tau_grid - tau0))[:, None]
    rec_a *= phase
    rec_b *= phase
    tau_final = tau0 + n_steps * d_tau
    fphase = np.exp(-1j * shift * (tau_final - tau0))
    final = WaveState(fin_a * fphase, fin_b * fphase, tau_final)
    return Trajectory(tau_grid, rec_a, rec_b, chain, drive, variant, float(d_tau),
                      record_every, norms / norm0 if norm0 else norms, final,
                      meta={"energy_shift": shift, "n_steps": n_steps})


def _time_dependent(chain: ChainParams, drive: DriveParams, variant: ModelVariant) -> bool:
    if drive.nu == 0:
        return False
    if drive.omega_R != 0:
        return True
    if variant is ModelVariant.FULL:
        return any(x != 0 for x in (chain.mu_a, chain.mu_b, drive.eta_a, drive.eta_b))
    return False


def oracle_propagate(state0: WaveState, tau_end: float, n_substeps: int, chain: ChainParams,
                     drive: DriveParams, variant=ModelVariant.SIMPLIFIED) -> WaveState:
    """Reference propagator for small chains.

    The Hamiltonian is frozen at the midpoint of each substep and its exact
    exponential applied, so the map is unitary by construction.
    """
    _check_sites(state0, chain)
    variant = _variant(variant)
    if chain.n_sites > ORACLE_MAX_SITES:
        raise ValueError(f"oracle limited to {ORACLE_MAX_SITES} sites, got {chain.n_sites}")
    if n_substeps < 1:
        raise ValueError("n_substeps must be >= 1")
    tau0 = float(state0.tau)
    dt = (tau_end - tau0) / n_substeps
    if dt <= 0:
        raise ValueError("tau_end must exceed the start time")
    if _time_dependent(chain, drive, variant) and abs(drive.nu) * dt > 0.01 + 1e-12:
        raise ValueError(f"substep too coarse: nu*dt = {abs(drive.nu) * dt:.3g} > 0.01")

    psi = state0.vector
    if not _time_dependent(chain, drive, variant):
        U = scipy.linalg.expm(-1j * (tau_end - tau0) * hamiltonian_matrix(tau0, chain, drive, variant))
        return WaveState.from_vector(U @ psi, tau_end)
    for k in range(n_substeps):
        tm = tau0 + (k + 0.5) * dt
        H = hamiltonian_matrix(tm, chain, drive, variant)
        psi = scipy.linalg.expm(-1j * dt * H) @ psi
    return WaveState.from_vector(psi, tau_end)
