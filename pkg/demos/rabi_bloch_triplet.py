"""
From the Rabi line to the Rabi-Bloch triplet
============================================

With only the ac drive (regime b) the inversion oscillates at Omega_R and the
dipole current shows the duplet 1 +- Omega_R.  Switching on the dc tilt
(regime d) splits the inversion line into Omega_R and Omega_R +- Omega_B.
"""
from rabibloch import predicted_lines
from rabibloch.scenarios import preset, run_scenario


def show(pid, kinds):
    cfg = preset(pid)
    m = run_scenario(cfg, write=False)
    print(f"preset {pid}: Omega_B={cfg.drive.omega_B}, Omega_R={cfg.drive.omega_R}, norm drift {m.norm_drift:.1e}")
    for kind in kinds:
        spec = m.spectra[f"{kind}_site80"]
        expected = predicted_lines(pid, kind, cfg.drive)
        print(f"  {kind:15s} expected {[round(f, 4) for f in expected]}")
        print(f"  {'':15s} detected {[round(f, 4) for f, _ in spec.peaks]}  (bin {spec.resolution:.1e})")


show("b", ["inversion", "dipole_current"])
show("d", ["inversion"])
