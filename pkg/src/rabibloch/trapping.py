"""
Coherent trapping in the resonantly driven chain.

In the co-rotating approximation, without tilt and at exact resonance, a
plane wave ``(u, v) exp(i h j)`` is stationary when::

    | t_a cos(h + K/2)    -omega_R/4      | |u|
    | -omega_R/4          t_b cos(h - K/2) | |v|  = 0

For ``K = 0`` this fixes ``cos h = omega_R / (4 sqrt(t_a t_b))`` and
``u/v = sqrt(t_b/t_a)``; the state exists only while
``|omega_R| <= 4 sqrt(t_a t_b)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import ChainParams, WaveState, normalize


@dataclass(frozen=True)
class TrappingAnalysis:
    ratio: float
    trapped: bool
    ha: float | None
    margin: float


def _real_hopping(t_a, t_b):
    t_a, t_b = complex(t_a), complex(t_b)
    if t_a.imag != 0 or t_b.imag != 0:
        raise ValueError("trapping analysis assumes real tunneling amplitudes")
    return t_a.real, t_b.real


def dispersion_determinant(ha: float, ka: float, omega_R: float, t_a: float, t_b: float) -> float:
    """Determinant of the 2x2 steady-state system; zero on the dispersion relation."""
    t_a, t_b = _real_hopping(t_a, t_b)
    return t_a * math.cos(ha + ka / 2) * t_b * math.cos(ha - ka / 2) - omega_R**2 / 16


def eigen_wavenumber(omega_R: float, t_a: float, t_b: float) -> TrappingAnalysis:
    """Trapping criterion and the non-negative eigen-wavenumber for ``K = 0``."""
    t_a, t_b = _real_hopping(t_a, t_b)
    if t_a <= 0 or t_b <= 0:
        raise ValueError("eigen-wavenumber needs positive t_a and t_b")
    scale = 4.0 * math.sqrt(t_a * t_b)
    ratio = omega_R / scale
    margin = scale - abs(omega_R)
    trapped = abs(ratio) <= 1.0
    ha = math.acos(ratio) if trapped else None
    return TrappingAnalysis(ratio, trapped, ha, margin)


def oblique_wavenumber(ka: float, omega_R: float, t_a: float, t_b: float) -> float | None:
    """Root ``ha`` in ``[0, pi/2]`` of the determinant for oblique incidence.

    Uses ``cos(h+K/2) cos(h-K/2) = (cos 2h + cos K)/2``, so
    ``cos 2h = omega_R^2 / (8 t_a t_b) - cos K``.  Returns ``None`` when no
    real root exists.
    """
    t_a, t_b = _real_hopping(t_a, t_b)
    if t_a <= 0 or t_b <= 0:
        raise ValueError("needs positive t_a and t_b")
    c2h = omega_R**2 / (8.0 * t_a * t_b) - math.cos(ka)
    if abs(c2h) > 1.0:
        return None
    return 0.5 * math.acos(c2h)


def steady_state(chain: ChainParams, ha) -> WaveState:
    """Plane-wave trapped state ``(sqrt(t_b/t_a), 1) exp(i ha j)`` on the finite chain.

    ``ha`` is a wavenumber or a :class:`TrappingAnalysis`; an untrapped
    analysis is rejected.  Only amplitudes and spatial phase are stored; the
    band phases ``exp(-/+ i delta_eps tau)`` come from the dynamics.
    """
    if isinstance(ha, TrappingAnalysis):
        if not ha.trapped:
            raise ValueError(f"no trapped state: omega_R exceeds 4 sqrt(t_a t_b) by {-ha.margin:.3g}")
        ha = ha.ha
    if ha is None or not np.isfinite(ha):
        raise ValueError("a finite eigen-wavenumber is required")
    t_a, t_b = _real_hopping(chain.t_a, chain.t_b)
    if t_a <= 0 or t_b < 0:
        raise ValueError("steady state needs t_a > 0 and t_b >= 0")
    r = t_b / t_a
    u = math.sqrt(r) / math.sqrt(1 + r)
    v = 1.0 / math.sqrt(1 + r)
    phase = np.exp(1j * ha * np.arange(chain.n_sites)) / math.sqrt(chain.n_sites)
    return normalize(WaveState(u * phase, v * phase))
