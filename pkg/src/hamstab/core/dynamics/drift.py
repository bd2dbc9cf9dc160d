"""Action drift statistics of sampled trajectories."""

from __future__ import annotations

from typing import NamedTuple, Sequence

import numpy as np

from .state import Trajectory


class DriftReport(NamedTuple):
    sup_drift: float
    first_passage: dict[float, float | None]


def drift_series(traj: Trajectory) -> np.ndarray:
    """|I(t_i) − I_0|_inf per sample."""
    return np.abs(traj.I - traj.I[0]).max(axis=1)


def measure_drift(traj: Trajectory, deltas: Sequence[float] = ()) -> DriftReport:
    """Sup-norm drift over the samples and, per δ, the first sample time with drift > δ."""
    drift = drift_series(traj)
    passages: dict[float, float | None] = {}
    for delta in deltas:
        above = np.flatnonzero(drift > delta)
        passages[float(delta)] = float(traj.times[above[0]]) if above.size else None
    return DriftReport(float(drift.max()), passages)
