"""Saturation: measured drift of family members against the stability ceiling."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..config import get_settings
from ..diophantine import Frequency, ProfileLike, l1_norm
from ..dynamics import integrate, measure_drift, sample_exact_flow
from ..fourier_taylor import AnalyticityWindow
from .family import InstabilityMember, instability_family_member, log_passage_time, predicted_drift
from .stability import StabilityConstants, delta_window, stability_bound

logger = logging.getLogger(__name__)

GRID_POINTS = 10


@dataclass
class SaturationReport:
    """Measured first passages of one member against the predicted ceiling."""

    j: int
    p: int
    q: int
    k_l1: int
    eps_j: float
    log_rate: float
    K: float
    delta_grid: list[float]
    log_t_measured: list[float]
    log_T_predicted: list[float]
    method: str
    sample_interval: float
    delta_reference: float
    log_t_reference: float
    integrator_error: float | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def t_measured(self) -> list[float | None]:
        return [math.exp(x) if x < 700 else None for x in self.log_t_measured]

    @property
    def ratios(self) -> list[float]:
        return [m / p for m, p in zip(self.log_t_measured, self.log_T_predicted)]

    @property
    def floor_exponents(self) -> list[float]:
        """log t_measured − log(δ/ε_j) per grid point."""
        return [t - math.log(d / self.eps_j) for t, d in zip(self.log_t_measured, self.delta_grid)]

    def ceiling_ok(self) -> bool:
        return all(m <= p + 1e-12 * abs(p) for m, p in zip(self.log_t_measured, self.log_T_predicted))

    def floor_ok(self, constants: StabilityConstants) -> bool:
        low, high = constants.c2_floor * self.q, constants.c2 * self.q
        return all(low * (1 - 1e-9) <= x <= high * (1 + 1e-9) for x in self.floor_exponents)

    def to_record(self) -> dict:
        return {
            "j": self.j,
            "p": self.p,
            "q": self.q,
            "eps_j": self.eps_j,
            "log_rate": self.log_rate,
            "K": self.K,
            "delta_grid": self.delta_grid,
            "t_measured": self.t_measured,
            "log_t_measured": self.log_t_measured,
            "log_T_predicted": self.log_T_predicted,
            "ratios": self.ratios,
            "method": self.method,
            "sample_interval": self.sample_interval,
            "delta_reference": self.delta_reference,
            "log_t_reference": self.log_t_reference,
            "integrator_error": self.integrator_error,
            "notes": self.notes,
        }


def _integrator_error(member: InstabilityMember, t_check: float, dt: float) -> float:
    """Sup action error of the splitting integrator vs the exact flow, relative to the total drift."""
    n_steps = max(1, int(round(t_check / dt)))
    every = max(1, n_steps // 1000)
    numeric = integrate(member.hamiltonian, member.start, n_steps * dt, dt, every)
    exact = sample_exact_flow(member.v, member.k, member.amplitude, 0.0, member.start, numeric.times)
    scale = predicted_drift(member, numeric.times[-1]) or 1.0
    return float(np.abs(numeric.I - exact.I).max() / scale)


def saturation_experiment(
    freq: Frequency,
    window: AnalyticityWindow,
    j: int,
    constants: StabilityConstants,
    profile: ProfileLike,
    delta_reference: float = 0.1,
    samples: int = 10_001,
    check_horizon: float = 1e3,
    dt: float = 1e-3,
) -> SaturationReport:
    """Build member j, measure first passages and compare with the ceiling.

    Horizons up to the configured `sampled_horizon` are measured by sampling
    the exact flow; longer ones are evaluated in log-space from the closed
    form. The splitting integrator is cross-checked on min(horizon,
    check_horizon).
    """
    settings = get_settings()
    member = instability_family_member(freq, window, j, constants.c, profile)
    K = profile.delta(constants.c / member.eps)
    delta_min, delta_max = delta_window(K, constants, window.R)

    notes: list[str] = []
    if delta_min < delta_max:
        grid = np.geomspace(delta_min, delta_max * (1 - 1e-9), GRID_POINTS).tolist()
    else:
        grid = []
        notes.append(f"empty delta window [{delta_min:.4g}, {delta_max:.4g})")
        logger.warning("Member j=%d has an empty delta window", j)
    predicted = [stability_bound(profile, member.eps, d, constants, window.R).log_T for d in grid]

    targets = grid + [delta_reference]
    closed = [log_passage_time(member, d) for d in targets]
    horizon = 1.05 * math.exp(max(closed)) if max(closed) < 700 else math.inf

    if horizon <= settings.sampled_horizon:
        times = np.linspace(0.0, horizon, samples)
        trajectory = sample_exact_flow(member.v, member.k, member.amplitude, 0.0, member.start, times)
        passages = measure_drift(trajectory, targets).first_passage
        measured = [math.log(passages[float(d)]) for d in targets]
        method, interval = "sampled", horizon / (samples - 1)
        error = _integrator_error(member, min(horizon, check_horizon), dt)
    else:
        measured, method, interval = closed, "closed_form", 0.0
        error = _integrator_error(member, check_horizon, dt)

    logger.info("Saturation j=%d (q=%d): method=%s, integrator error %.3g", j, member.q, method, error)
    return SaturationReport(
        j=j,
        p=member.p,
        q=member.q,
        k_l1=l1_norm(member.k),
        eps_j=member.eps,
        log_rate=member.predicted_log_rate,
        K=K,
        delta_grid=grid,
        log_t_measured=measured[:-1],
        log_T_predicted=predicted,
        method=method,
        sample_interval=interval,
        delta_reference=delta_reference,
        log_t_reference=measured[-1],
        integrator_error=error,
        notes=notes,
    )


def exponent_slope(reports: Sequence[SaturationReport]) -> float:
    """Least-squares slope of log t(δ_ref) − log(δ_ref/ε_j) against |k_j|₁."""
    if len(reports) < 2:
        raise ValueError("need at least two members to fit a slope")
    x = np.array([r.k_l1 for r in reports], dtype=float)
    y = np.array([r.log_t_reference - math.log(r.delta_reference / r.eps_j) for r in reports])
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)
