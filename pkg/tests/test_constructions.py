"""Tests for the resonant counterexample, the instability family and the stability ceiling."""

import math
from fractions import Fraction

import numpy as np
import pytest

from hamstab.core.constructions import (
    StabilityConstants,
    calibrated_constants,
    default_c,
    delta_window,
    exponent_slope,
    instability_family_member,
    log_passage_time,
    passage_time,
    predicted_drift,
    resonant_counterexample,
    saturation_experiment,
    stability_bound,
)
from hamstab.core.diophantine import rational_frequency
from hamstab.core.dynamics import SeparableHamiltonian, integrate, measure_drift
from hamstab.core.errors import DeltaOutOfWindow, NonResonant, NormBudgetExceeded, NotResonant, ProfileRangeExceeded
from hamstab.core.fourier_taylor import majorant_norm


class TestResonantCounterexample:
    def test_half_frequency_witness(self, window):
        ce = resonant_counterexample(rational_frequency("1/2"), 1e-3, window)
        assert ce.k == (1, -2)
        assert ce.amplitude == pytest.approx(1.518e-4, rel=1e-3)
        assert ce.drift_rate == pytest.approx(1.908e-3, rel=1e-3)
        assert majorant_norm(ce.H - ce.H.select(~ce.H.keys.any(axis=1))) == pytest.approx(1e-3)

    def test_integrated_drift_reaches_prediction(self, window):
        ce = resonant_counterexample(rational_frequency("1/2"), 1e-3, window)
        traj = integrate(ce.H, ce.worst_z0, ce.horizon, 0.01, sample_every=1000)
        drift = measure_drift(traj).sup_drift
        assert drift == pytest.approx(ce.predicted_sup_drift, abs=1e-3)
        assert drift == pytest.approx(1.908, rel=1e-3)

    def test_irrational_frequency_rejected(self, sqrt2m1, window):
        with pytest.raises(NonResonant):
            resonant_counterexample(sqrt2m1, 1e-3, window)

    def test_eps_must_be_positive(self, window):
        with pytest.raises(ValueError):
            resonant_counterexample(rational_frequency("1/2"), 0.0, window)


class TestInstabilityFamily:
    def test_member_q5(self, sqrt2m1, window, sqrt2m1_profile):
        member = instability_family_member(sqrt2m1, window, 2, 1.0, sqrt2m1_profile, check_norms=False)
        assert (member.p, member.q) == (2, 5)
        assert member.k == (2, -5)
        assert member.eps == pytest.approx(0.01421, rel=1e-3)
        assert member.exponent == pytest.approx(2 * math.pi * 0.1 * 7)
        assert math.exp(member.exponent) == pytest.approx(81.3, rel=1e-3)
        assert predicted_drift(member, 1000.0) == pytest.approx(0.17477, rel=1e-3)
        assert predicted_drift(member, 0.0) == 0.0

    def test_small_c_breaks_norm_budget(self, sqrt2m1, window, sqrt2m1_profile):
        with pytest.raises(NormBudgetExceeded):
            instability_family_member(sqrt2m1, window, 2, 1.0, sqrt2m1_profile)

    def test_default_c_is_smallest_passing_value(self, sqrt2m1, window, sqrt2m1_profile):
        c = default_c(sqrt2m1, window, [1, 2, 3, 4])
        assert c == pytest.approx(2 * window.action_radius, rel=1e-8)
        for j in (1, 2, 3, 4):
            member = instability_family_member(sqrt2m1, window, j, c, sqrt2m1_profile)
            assert majorant_norm(member.f1) <= member.eps / 2
            assert majorant_norm(member.f2) <= member.eps / 2

    def test_member_hamiltonian_is_the_resonant_system(self, sqrt2m1, window, sqrt2m1_profile):
        member = instability_family_member(sqrt2m1, window, 1, 5.0, sqrt2m1_profile)
        assert member.v[1] * member.q == member.p
        assert sum(ki * float(vi) for ki, vi in zip(member.k, member.v)) == pytest.approx(0.0, abs=1e-15)
        assert SeparableHamiltonian.from_function(member.hamiltonian).speed == pytest.approx([1.0, 0.5])

    def test_integrator_follows_closed_form(self, sqrt2m1, window, sqrt2m1_profile):
        member = instability_family_member(sqrt2m1, window, 2, 5.0, sqrt2m1_profile)
        traj = integrate(member.hamiltonian, member.start, 100.0, 0.01, sample_every=100)
        exact = member.flow(traj.times[-1])
        assert np.abs(traj.I[-1] - exact.I).max() <= 1e-6 * predicted_drift(member, 100.0)

    def test_passage_time_closed_form(self, sqrt2m1, window, sqrt2m1_profile):
        member = instability_family_member(sqrt2m1, window, 2, 1.0, sqrt2m1_profile, check_norms=False)
        expected = 0.1 * math.exp(member.exponent) / member.eps
        assert passage_time(member, 0.1) == pytest.approx(expected)
        assert log_passage_time(member, 0.1) == pytest.approx(math.log(expected))
        reached = member.flow(passage_time(member, 0.1))
        assert np.abs(reached.I).max() == pytest.approx(0.1)

    def test_non_orthogonal_direction_is_a_computation_error(self, sqrt2m1, window, sqrt2m1_profile, monkeypatch):
        monkeypatch.setattr("hamstab.core.constructions.family.exact_dot", lambda k, v: Fraction(1, 7))
        with pytest.raises(NotResonant):
            instability_family_member(sqrt2m1, window, 2, 5.0, sqrt2m1_profile)

    def test_negative_index_rejected(self, sqrt2m1, window):
        with pytest.raises(ValueError):
            instability_family_member(sqrt2m1, window, -1, 5.0)


class TestStabilityBound:
    def test_bound_at_lambda_two(self, sqrt2m1_profile):
        constants = StabilityConstants(c=1.0)
        eps = 1.0 / sqrt2m1_profile.lam(2)
        prediction = stability_bound(sqrt2m1_profile, eps, 0.5, constants, R=2.0)
        assert prediction.K == pytest.approx(2.0)
        assert prediction.log_T == pytest.approx(math.log(0.5) - math.log(eps) + 2.0)
        assert prediction.constants_used == (1.0, 1.0, 1.0)

    def test_eps_beyond_profile_range(self, sqrt2m1_profile):
        with pytest.raises(ProfileRangeExceeded):
            stability_bound(sqrt2m1_profile, 10.0, 0.5, StabilityConstants(c=4.2), R=2.0)

    def test_delta_outside_window(self, sqrt2m1_profile):
        eps = 1.0 / sqrt2m1_profile.lam(2)
        with pytest.raises(DeltaOutOfWindow):
            stability_bound(sqrt2m1_profile, eps, 5.0, StabilityConstants(c=1.0), R=2.0)
        with pytest.raises(DeltaOutOfWindow):
            stability_bound(sqrt2m1_profile, eps, 0.1, StabilityConstants(c=1.0), R=2.0)

    def test_delta_window(self):
        assert delta_window(4.0, StabilityConstants(c=1.0, c1=2.0), 2.0) == (0.125, 0.5)

    def test_invalid_constants(self):
        with pytest.raises(ValueError):
            StabilityConstants(c=0.0)

    def test_calibrated_constants(self, window):
        constants = calibrated_constants(window, 4.2)
        assert constants.c2 == pytest.approx(4 * math.pi * 0.1)
        assert constants.c2_floor == pytest.approx(2 * math.pi * 0.1)

    def test_eps0_is_c_over_lambda_one(self, sqrt2m1_profile):
        constants = StabilityConstants(c=4.2)
        assert constants.eps0(sqrt2m1_profile) == pytest.approx(4.2 / sqrt2m1_profile.lam(1))


class TestSaturation:
    @pytest.fixture
    def constants(self, sqrt2m1, window):
        return calibrated_constants(window, default_c(sqrt2m1, window, [1, 2, 3, 4]))

    def test_member_sits_between_floor_and_ceiling(self, sqrt2m1, window, sqrt2m1_profile, constants):
        report = saturation_experiment(
            sqrt2m1, window, 2, constants, sqrt2m1_profile, check_horizon=10.0, dt=0.01
        )
        assert report.q == 5 and report.k_l1 == 7
        assert report.method == "sampled"
        assert report.K == pytest.approx(5.0)
        assert len(report.delta_grid) == 10
        assert report.delta_grid[0] == pytest.approx(0.2)
        assert report.ceiling_ok()
        assert report.floor_ok(constants)
        assert report.integrator_error < 1e-6
        record = report.to_record()
        assert record["q"] == 5 and len(record["t_measured"]) == 10

    def test_large_members_use_closed_form(self, sqrt2m1, window, sqrt2m1_profile, constants):
        report = saturation_experiment(
            sqrt2m1, window, 4, constants, sqrt2m1_profile, check_horizon=10.0, dt=0.01
        )
        assert report.q == 29
        assert report.method == "closed_form"
        assert report.ceiling_ok()

    def test_exponent_slope(self, sqrt2m1, window, sqrt2m1_profile, constants):
        reports = [
            saturation_experiment(sqrt2m1, window, j, constants, sqrt2m1_profile, check_horizon=10.0, dt=0.01)
            for j in (1, 2, 3, 4)
        ]
        assert exponent_slope(reports) == pytest.approx(2 * math.pi * 0.1, rel=0.05)
        with pytest.raises(ValueError):
            exponent_slope(reports[:1])
