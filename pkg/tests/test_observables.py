import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rabibloch import (ChainParams, DriveParams, ModelVariant, WaveState, diagnostics,
                       dipole_current, gaussian_packet, inversion_density, normalize, propagate,
                       rhs, tunneling_current_symmetrized, tunneling_current_two_point)
from rabibloch.observables import population

from .conftest import random_state
from .test_dynamics import random_params


def test_uniform_excited_inversion():
    n = 10
    s = WaveState(np.full(n, 1 / math.sqrt(n)) + 0j, np.zeros(n))
    w = inversion_density(s).values
    np.testing.assert_allclose(w, 1 / n**2, rtol=1e-14)
    assert w.sum() == pytest.approx(1 / n, rel=1e-14)


def test_balanced_inversion_vanishes(rng):
    a = rng.normal(size=8) + 1j * rng.normal(size=8)
    assert np.all(inversion_density(WaveState(a, a.copy())).values == 0)


def test_packet_inversion_positive():
    s = gaussian_packet(ChainParams(128), 80, 20)
    w = inversion_density(s).values
    assert np.all(w >= 0)
    assert w.sum() == pytest.approx(1 / 128, rel=1e-12)


def test_inversion_sum_is_population_difference(rng):
    s = normalize(random_state(rng, 13))
    d = diagnostics(s)
    assert inversion_density(s).values.sum() == pytest.approx((d.population_a - d.population_b) / 13, abs=1e-16)


def test_real_uniform_state_carries_no_current():
    chain = ChainParams(6, t_a=0.03, t_b=0.02)
    s = WaveState(np.full(6, 0.3) + 0j, np.full(6, 0.2) + 0j)
    assert np.all(tunneling_current_two_point(s, chain).values == 0)
    assert np.all(tunneling_current_symmetrized(s, chain).values == 0)


@pytest.mark.parametrize("h", [0.3, 0.9707, -1.2, 2.5])
def test_plane_wave_current_follows_group_velocity(h):
    # E(h) = 2 t cos h for the hopping convention t psi_{j+1} + t* psi_{j-1};
    # the probability current is |amp|^2 dE/dh = -2 t sin h |amp|^2
    t, amp = 0.035, 0.2
    n = 12
    chain = ChainParams(n, t_a=t, t_b=0.0)
    s = WaveState(amp * np.exp(1j * h * np.arange(n)), np.zeros(n))
    expected = -2 * t * math.sin(h) * amp**2
    np.testing.assert_allclose(tunneling_current_two_point(s, chain).values, expected, rtol=1e-12, atol=1e-18)
    np.testing.assert_allclose(tunneling_current_symmetrized(s, chain).values[1:-1], expected,
                               rtol=1e-12, atol=1e-18)


def test_plane_wave_current_sign_from_dynamics():
    # a packet with positive h moves to smaller j for t > 0, consistent with the sign above
    chain = ChainParams(200, t_a=0.035, t_b=0.0)
    s = gaussian_packet(chain, 100, 10, momentum=0.8)
    traj = propagate(s, 200.0, 0.02, chain, DriveParams())
    assert diagnostics(traj.final).centroid < 100
    assert tunneling_current_two_point(s, chain).values.sum() < 0


def test_symmetric_state_has_zero_site_current():
    chain = ChainParams(5, t_a=0.03, t_b=0.01)
    a = np.array([0.1, 0.4j + 0.2, 0.7, 0.4j + 0.2, 0.3])
    b = np.array([0.0, 0.5, 0.1j, 0.5, 0.2])
    assert tunneling_current_symmetrized(WaveState(a, b), chain).values[2] == pytest.approx(0, abs=1e-17)


@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 20))
def test_site_current_is_mean_of_adjacent_bonds(seed, n):
    rng = np.random.default_rng(seed)
    chain = ChainParams(n, t_a=complex(rng.normal(), rng.normal()) * 0.03,
                        t_b=complex(rng.normal(), rng.normal()) * 0.03)
    s = random_state(rng, n)
    bonds = np.concatenate([[0.0], tunneling_current_two_point(s, chain).values, [0.0]])
    site = tunneling_current_symmetrized(s, chain).values
    np.testing.assert_allclose(site, 0.5 * (bonds[:-1] + bonds[1:]), rtol=0, atol=1e-14)


@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 20),
       variant=st.sampled_from([ModelVariant.SIMPLIFIED, ModelVariant.RWA, ModelVariant.FULL]),
       tau=st.floats(0, 1000))
def test_continuity_is_exact_for_the_generator(seed, n, variant, tau):
    # dP_j/dtau from the exact right-hand side equals minus the bond-current divergence
    rng = np.random.default_rng(seed)
    chain, drive = random_params(rng, n)
    if variant is not ModelVariant.FULL:
        drive = drive.replace(eta_a=0, eta_b=0)
    s = normalize(random_state(rng, n))
    da, db = rhs(s, tau, chain, drive, variant)
    rate = 2 * (np.conj(s.a) * da).real + 2 * (np.conj(s.b) * db).real
    bonds = tunneling_current_two_point(s, chain, drive, tau).values
    div = np.concatenate([bonds, [0.0]]) - np.concatenate([[0.0], bonds])
    np.testing.assert_allclose(rate, -div, rtol=0, atol=1e-14)


def test_bond_current_length():
    s = gaussian_packet(ChainParams(9), 4, 2)
    assert len(tunneling_current_two_point(s, ChainParams(9))) == 8
    with pytest.raises(ValueError):
        tunneling_current_two_point(WaveState(np.ones(1), np.ones(1)), ChainParams(1))


def test_dipole_current_examples():
    n = 4
    zero_b = WaveState(np.ones(n) + 0j, np.zeros(n))
    assert np.all(dipole_current(zero_b).values == 0)
    real = WaveState(np.full(n, 0.5) + 0j, np.full(n, 0.5) + 0j)
    assert np.all(dipole_current(real).values == 0)
    s = WaveState(np.array([1 / math.sqrt(2)]) + 0j, np.array([1j / math.sqrt(2)]))
    assert dipole_current(s, drive=DriveParams(nu=1.0)).values[0] == pytest.approx(1.0, abs=1e-15)
    assert dipole_current(s, drive=DriveParams(nu=0.5)).values[0] == pytest.approx(0.5, abs=1e-15)


def test_observables_accept_batched_arrays(rng):
    a = rng.normal(size=(3, 5)) + 0j
    b = rng.normal(size=(3, 5)) + 0j
    chain = ChainParams(5)
    batched = tunneling_current_symmetrized((a, b), chain).values
    for i in range(3):
        np.testing.assert_allclose(batched[i], tunneling_current_symmetrized((a[i], b[i]), chain).values)
    assert population((a, b)).values.shape == (3, 5)


def test_diagnostics():
    s = gaussian_packet(ChainParams(128), 80, 20)
    d = diagnostics(s)
    assert d.total_norm == pytest.approx(1, abs=1e-12)
    assert d.centroid == pytest.approx(80, abs=0.1)
    assert d.population_a == pytest.approx(1, abs=1e-12) and d.population_b == 0


def test_edge_leakage_small_for_central_packet():
    assert diagnostics(gaussian_packet(ChainParams(128), 64, 5)).edge_leakage < 1e-10
    # the wide preset packet reaches the far wall at the 1e-6 level
    assert diagnostics(gaussian_packet(ChainParams(128), 80, 20)).edge_leakage > 1e-7


@given(seed=st.integers(0, 2**32 - 1), chi=st.floats(-10, 10))
def test_observables_global_phase_invariant(seed, chi):
    rng = np.random.default_rng(seed)
    chain = ChainParams(7, t_a=0.03 + 0.01j, t_b=0.02)
    s = random_state(rng, 7)
    p = s.with_phase(chi)
    for fn in (inversion_density, dipole_current, population,
               lambda x: tunneling_current_two_point(x, chain),
               lambda x: tunneling_current_symmetrized(x, chain)):
        np.testing.assert_allclose(fn(s).values, fn(p).values, rtol=0, atol=1e-12)
