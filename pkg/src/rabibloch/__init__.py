"""Rabi-Bloch oscillations in a tilted, optically driven chain of two-level emitters."""
__version__ = "0.1.0"

from .model import (ChainParams, DriveParams, WaveState, gaussian_packet, normalize,  # noqa: E402
                    omega_b_from_physical, trapped_packet)
from .dynamics import (ModelVariant, NumericalAbort, Trajectory, oracle_propagate,  # noqa: E402
                       propagate, rhs, step_rk4)
from .observables import (diagnostics, dipole_current, inversion_density,  # noqa: E402
                          tunneling_current_symmetrized, tunneling_current_two_point)
from .spectra import amplitude_spectrum, find_peaks, predicted_lines, record_series  # noqa: E402
from .trapping import dispersion_determinant, eigen_wavenumber, steady_state  # noqa: E402

__all__ = [
    "ChainParams", "DriveParams", "WaveState", "gaussian_packet", "normalize",
    "omega_b_from_physical", "trapped_packet", "ModelVariant", "NumericalAbort",
    "Trajectory", "oracle_propagate", "propagate", "rhs", "step_rk4", "diagnostics",
    "dipole_current", "inversion_density", "tunneling_current_symmetrized",
    "tunneling_current_two_point", "amplitude_spectrum", "find_peaks", "predicted_lines",
    "record_series", "dispersion_determinant", "eigen_wavenumber", "steady_state",
]
