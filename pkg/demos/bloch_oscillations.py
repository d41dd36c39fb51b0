"""
Bloch oscillations of a packet in a tilted chain
================================================

A Gaussian packet in the excited band, no ac field.  The packet is broad in
real space and therefore narrow in momentum, so it swings back and forth over
4 t_a / Omega_B sites with the Bloch period 2 pi / Omega_B.  The spectra show
the Bloch line and its harmonics.
"""
import math

import numpy as np

from rabibloch import diagnostics, record_series
from rabibloch.scenarios import preset, run_scenario

cfg = preset("a")
print(f"Omega_B = {cfg.drive.omega_B}, T_B = {2 * math.pi / cfg.drive.omega_B:.1f}, run to tau = {cfg.tau_end:.0f}")

m = run_scenario(cfg, write=False)
traj = m.trajectory
print(f"norm drift {m.norm_drift:.2e}")

# centroid and width over time: the centroid swings, the width barely changes
pop = np.abs(traj.a) ** 2
j = np.arange(cfg.chain.n_sites)
mean = pop @ j
width = np.sqrt(pop @ j**2 - mean**2)
for i in range(0, len(traj), len(traj) // 10):
    d = diagnostics(traj.state(i))
    print(f"tau {traj.tau_grid[i]:7.1f}  centroid {d.centroid:6.2f}  rms width {width[i]:5.2f}")

# after one full period the state comes back (up to a global phase)
period = int(round(2 * math.pi / cfg.drive.omega_B / traj.record_spacing))
overlap = abs(np.vdot(traj.state(0).vector, traj.state(period).vector))
print(f"|<psi(0)|psi(T_B)>| = {overlap:.5f}")
print(f"swing {mean.max() - mean.min():.1f} sites, 4 t_a / Omega_B = {4 * cfg.chain.t_a / cfg.drive.omega_B:.1f}")

for label in ("inversion_site80", "tunnel_current_site80"):
    spec = m.spectra[label]
    print(label, "lines:", [(round(f / cfg.drive.omega_B, 2), round(a, 5)) for f, a in spec.peaks[:5]],
          "(frequency in units of Omega_B, amplitude)")

# the site current averages to zero over whole periods
rec = record_series(traj, "tunnel_current", 80)
print(f"mean current over two Bloch periods: {rec.values[:2 * period].mean():.2e}")
