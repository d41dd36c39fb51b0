"""Compiled right-hand side and fixed-step RK4 loop.

Real parameters are packed as ``rp = [delta_eps, omega_B, omega_R, nu, K, phi,
s_a, s_b, mu_a, mu_b, energy_shift]`` and complex ones as ``cp = [t_a, t_b,
eta_a, eta_b]``.  ``coupling`` is 0 for the cosine drive and 1 for the
co-rotating (RWA) half only.
"""
import numpy as np
from numba import njit

COS_DRIVE = 0
RWA_DRIVE = 1

# status codes returned by rk4_run
OK = 0
NONFINITE = 1
DRIFT = 2


@njit(cache=True)
def rhs_into(a, b, tau, rp, cp, coupling, da, db):
    n = a.size
    delta_eps = rp[0]
    omega_B = rp[1]
    omega_R = rp[2]
    nu = rp[3]
    K = rp[4]
    phi = rp[5]
    s_a = rp[6]
    s_b = rp[7]
    mu_a = rp[8]
    mu_b = rp[9]
    shift = rp[10]
    t_a = cp[0]
    t_b = cp[1]
    eta_a = cp[2]
    eta_b = cp[3]

    c_prev = 0.0
    for j in range(n):
        theta = K * j - nu * tau + phi
        c = np.cos(theta)
        ha = (delta_eps - omega_B * j - s_a - mu_a * c - shift) * a[j]
        hb = (-delta_eps - omega_B * j - s_b - mu_b * c - shift) * b[j]
        if j + 1 < n:
            ha += (t_a - eta_a * c) * a[j + 1]
            hb += (t_b - eta_b * c) * b[j + 1]
        if j > 0:
            # bond (j-1, j) carries the drive phase of its left site
            ha += np.conj(t_a - eta_a * c_prev) * a[j - 1]
            hb += np.conj(t_b - eta_b * c_prev) * b[j - 1]
        if coupling == RWA_DRIVE:
            g = 0.5 * omega_R * (np.cos(theta) + 1j * np.sin(theta))
            ha -= g * b[j]
            hb -= np.conj(g) * a[j]
        else:
            ha -= omega_R * c * b[j]
            hb -= omega_R * c * a[j]
        da[j] = -1j * ha
        db[j] = -1j * hb
        c_prev = c


@njit(cache=True)
def rk4_step_into(a, b, tau, h, rp, cp, coupling, out_a, out_b, work):
    k1a, k1b, k2a, k2b, k3a, k3b, k4a, k4b, ya, yb = (
        work[0], work[1], work[2], work[3], work[4],
        work[5], work[6], work[7], work[8], work[9])
    n = a.size
    half = 0.5 * h
    rhs_into(a, b, tau, rp, cp, coupling, k1a, k1b)
    for j in range(n):
        ya[j] = a[j] + half * k1a[j]
        yb[j] = b[j] + half * k1b[j]
    rhs_into(ya, yb, tau + half, rp, cp, coupling, k2a, k2b)
    for j in range(n):
        ya[j] = a[j] + half * k2a[j]
        yb[j] = b[j] + half * k2b[j]
    rhs_into(ya, yb, tau + half, rp, cp, coupling, k3a, k3b)
    for j in range(n):
        ya[j] = a[j] + h * k3a[j]
        yb[j] = b[j] + h * k3b[j]
    rhs_into(ya, yb, tau + h, rp, cp, coupling, k4a, k4b)
    sixth = h / 6.0
    for j in range(n):
        out_a[j] = a[j] + sixth * (k1a[j] + 2.0 * k2a[j] + 2.0 * k3a[j] + k4a[j])
        out_b[j] = b[j] + sixth * (k1b[j] + 2.0 * k2b[j] + 2.0 * k3b[j] + k4b[j])


@njit(cache=True)
def rk4_run(a0, b0, tau0, n_steps, record_every, h, rp, cp, coupling, max_drift,
            rec_a, rec_b, norms, final_a, final_b):
    """Integrate ``n_steps`` steps, storing every ``record_every``-th state.

    Returns ``(status, step)``; on abort ``step`` is the offending step index.
    The step time is ``tau0 + k * h`` rather than an accumulated sum.  The last good
    state is left in ``final_a``/``final_b``.
    """
    n = a0.size
    work = np.empty((10, n), dtype=np.complex128)
    a = a0.copy()
    b = b0.copy()
    na = np.empty(n, dtype=np.complex128)
    nb = np.empty(n, dtype=np.complex128)
    norm0 = 0.0
    for j in range(n):
        norm0 += a[j].real ** 2 + a[j].imag ** 2 + b[j].real ** 2 + b[j].imag ** 2
    rec_a[0, :] = a
    rec_b[0, :] = b
    norms[0] = norm0
    r = 1
    status = OK
    last = n_steps
    for k in range(n_steps):
        rk4_step_into(a, b, tau0 + k * h, h, rp, cp, coupling, na, nb, work)
        norm = 0.0
        for j in range(n):
            norm += na[j].real ** 2 + na[j].imag ** 2 + nb[j].real ** 2 + nb[j].imag ** 2
        if not np.isfinite(norm):
            status = NONFINITE
            last = k + 1
            break
        a, na = na, a
        b, nb = nb, b
        if (k + 1) % record_every == 0:
            rec_a[r, :] = a
            rec_b[r, :] = b
            norms[r] = norm
            r += 1
        if abs(norm - norm0) > max_drift:
            status = DRIFT
            last = k + 1
            break
    final_a[:] = a
    final_b[:] = b
    return status, last
