"""Exact single-resonance flows, Strang splitting and drift measurement."""

from .drift import DriftReport, drift_series, measure_drift
from .flows import exact_flow_single_resonance, sample_exact_flow
from .integrator import SeparableHamiltonian, integrate, splitting_step
from .state import (
    State,
    Trajectory,
    angle_distance,
    read_trajectory_csv,
    reduce_angles,
    write_trajectory_csv,
)

__all__ = [
    "DriftReport",
    "SeparableHamiltonian",
    "State",
    "Trajectory",
    "angle_distance",
    "drift_series",
    "exact_flow_single_resonance",
    "integrate",
    "measure_drift",
    "read_trajectory_csv",
    "reduce_angles",
    "sample_exact_flow",
    "splitting_step",
    "write_trajectory_csv",
]
