"""Long-running end-to-end checks of the quantitative claims.

Run with `pytest -m slow`.
"""

import math

import numpy as np
import pytest

from hamstab.core.config import reset_settings
from hamstab.core.constructions import (
    calibrated_constants,
    default_c,
    instability_family_member,
    passage_time,
    predicted_drift,
    resonant_counterexample,
    saturation_experiment,
)
from hamstab.core.diophantine import ResonanceLattice, rational_frequency
from hamstab.core.dynamics import State, integrate, measure_drift, sample_exact_flow
from hamstab.core.fourier_taylor import AnalyticityWindow, cosine, linear_hamiltonian
from hamstab.core.normal_form import normalize, reference_perturbation
from hamstab.services.normalform_service import log_slope

pytestmark = pytest.mark.slow

OMEGA = np.array([1.0, math.sqrt(2) - 1])


@pytest.fixture
def q5_member(sqrt2m1, window, sqrt2m1_profile):
    """The q = 5 member with ε = 1/(5Ψ(5)), outside the norm budget on purpose."""
    return instability_family_member(sqrt2m1, window, 2, 1.0, sqrt2m1_profile, check_norms=False)


class TestDriftLaw:
    def test_integrator_matches_exact_flow(self, q5_member):
        traj = integrate(q5_member.hamiltonian, q5_member.start, 1e3, 1e-3, sample_every=1000)
        exact = sample_exact_flow(q5_member.v, q5_member.k, q5_member.amplitude, 0.0, q5_member.start, traj.times)
        total = predicted_drift(q5_member, 1e3)
        assert total == pytest.approx(0.17477, rel=1e-4)
        assert np.abs(traj.I - exact.I).max() <= 1e-6 * total

    def test_first_passage_within_one_sample(self, q5_member):
        interval = 0.01
        times = np.arange(0, 100_001) * interval
        traj = sample_exact_flow(q5_member.v, q5_member.k, q5_member.amplitude, 0.0, q5_member.start, times)
        measured = measure_drift(traj, [0.1]).first_passage[0.1]
        expected = passage_time(q5_member, 0.1)
        assert expected == pytest.approx(572.0, abs=0.5)
        assert expected <= measured <= expected + interval

    def test_ceiling_and_exponent_slope(self, sqrt2m1, window, sqrt2m1_profile):
        indices = [1, 2, 3, 4, 5, 6]
        constants = calibrated_constants(window, default_c(sqrt2m1, window, indices))
        reports = [
            saturation_experiment(sqrt2m1, window, j, constants, sqrt2m1_profile, check_horizon=100.0, dt=1e-2)
            for j in indices
        ]
        assert [r.q for r in reports] == [2, 5, 12, 29, 70, 169]
        for report in reports:
            assert len(report.delta_grid) == 10
            assert report.ceiling_ok()
            assert report.floor_ok(constants)

        fit = reports[:4]
        x = np.array([r.k_l1 for r in fit], dtype=float)
        y = np.array([r.log_t_reference - math.log(r.delta_reference / r.eps_j) for r in fit])
        slope = np.polyfit(x, y, 1)[0]
        assert slope == pytest.approx(2 * math.pi * window.sigma, rel=0.05)


class TestResonantWitness:
    def test_drift_exceeds_one(self, window):
        ce = resonant_counterexample(rational_frequency("1/2"), 1e-3, window)
        traj = integrate(ce.H, ce.worst_z0, ce.horizon, 1e-3, sample_every=1000)
        drift = measure_drift(traj).sup_drift
        assert drift == pytest.approx(1.9078, abs=1e-3)
        assert drift > 1


class TestIntegratorHealth:
    def test_energy_error_has_no_secular_growth(self, window):
        H = linear_hamiltonian(OMEGA, window) + cosine(window, (1, 0), 0.05) + cosine(window, (1, 1), 0.05)
        traj = integrate(H, State([0.0, 0.0], [0.0, 0.0]), 1e4, 0.05)
        error = traj.energy_error()
        first = error[traj.times <= 1e3].max()
        last = error[traj.times >= 9e3].max()
        assert last <= 1.5 * first


class TestNormalFormDecay:
    @pytest.fixture
    def setup(self, monkeypatch):
        monkeypatch.setenv("HAMSTAB_PRUNE_TOLERANCE", "1e-36")
        reset_settings()
        window = AnalyticityWindow(sigma=0.5, R=2.0, n=2)
        return window, ResonanceLattice.trivial(2)

    def test_remainder_decays_with_order(self, setup):
        window, lattice = setup
        f = reference_perturbation(1e-4, window)
        Ks = [4.0, 6.0, 8.0, 10.0]
        remainders = [normalize(OMEGA, f, lattice, K, 40).remainder_majorant for K in Ks]
        assert all(b < a for a, b in zip(remainders, remainders[1:]))
        assert log_slope(Ks, remainders) <= -0.7

    def test_distance_to_identity_is_first_order(self, setup):
        window, lattice = setup
        single = normalize(OMEGA, reference_perturbation(1e-4, window), lattice, 4, 10).distance_to_identity
        double = normalize(OMEGA, reference_perturbation(2e-4, window), lattice, 4, 10).distance_to_identity
        assert 1.8 <= double / single <= 2.2
