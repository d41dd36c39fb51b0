"""
Checking the integrator against exact exponentials
==================================================

On chains small enough for dense linear algebra the Runge-Kutta propagator
is compared with a piecewise exact exponential of the Hamiltonian.  The
reference freezes H at the midpoint of each substep, so it has its own error
that shrinks with the square of the substep; refining it shows which side
limits the agreement.
"""
import numpy as np

from rabibloch import ChainParams, DriveParams, gaussian_packet, oracle_propagate, propagate

drive = DriveParams(omega_B=3.9e-3, omega_R=2.5e-2)
tau_end = 50.0

for n in (3, 8, 16):
    chain = ChainParams(n)
    s0 = gaussian_packet(chain, (n - 1) / 2, max(1.0, n * 20 / 128))
    ex = oracle_propagate(s0, tau_end, 20000, chain, drive)
    for d_tau in (0.02, 0.005):
        rk = propagate(s0, tau_end, d_tau, chain, drive).final
        print(f"N={n:2d}  d_tau={d_tau:5.3f}  max |RK4 - reference| = {np.max(np.abs(rk.vector - ex.vector)):.2e}")

chain = ChainParams(8)
s0 = gaussian_packet(chain, 3.5, 1.25)
rk = propagate(s0, tau_end, 0.005, chain, drive).final
for sub in (5000, 20000, 80000):
    ex = oracle_propagate(s0, tau_end, sub, chain, drive)
    print(f"N=8 reference with {sub:6d} substeps: max |RK4 - reference| = {np.max(np.abs(rk.vector - ex.vector)):.2e}")
