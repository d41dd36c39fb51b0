"""
Multiplets under oblique incidence
==================================

A travelling ac wave (K != 0) together with the tilt turns the inversion
spectrum into a comb of lines spaced by the Bloch frequency.
"""
import numpy as np

from rabibloch.scenarios import preset, run_scenario

cfg = preset("e")
m = run_scenario(cfg, write=False)
wb, wr = cfg.drive.omega_B, cfg.drive.omega_R
spec = m.spectra["inversion_site80"]
band = [(f, a) for f, a in spec.peaks if abs(f - wr) <= 3 * wb]
print(f"K = {cfg.drive.K}; lines within Omega_R +- 3 Omega_B:")
for f, a in band:
    print(f"  {f:.5f}   (Omega_R {(f - wr) / wb:+.2f} Omega_B)  amplitude {a:.2e}")
print("spacings / Omega_B:", np.round(np.diff([f for f, _ in band]) / wb, 3))

# the same drive with a standing wave and a frozen ground band
for pid in ("f", "f-oblique"):
    s = run_scenario(preset(pid), write=False).spectra["inversion_site80"]
    print(pid, "dominant inversion line", round(s.dominant_peak()[0], 5))
