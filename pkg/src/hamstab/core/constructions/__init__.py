"""Explicit drifting systems, the instability family and the stability ceiling."""

from .counterexample import ResonantCounterexample, resonant_counterexample
from .family import (
    InstabilityMember,
    default_c,
    instability_family_member,
    log_passage_time,
    minimal_norm_constant,
    passage_time,
    predicted_drift,
    predicted_log_drift,
)
from .saturation import SaturationReport, exponent_slope, saturation_experiment
from .stability import (
    StabilityConstants,
    StabilityPrediction,
    calibrated_constants,
    delta_window,
    stability_bound,
)

__all__ = [
    "InstabilityMember",
    "ResonantCounterexample",
    "SaturationReport",
    "StabilityConstants",
    "StabilityPrediction",
    "calibrated_constants",
    "default_c",
    "delta_window",
    "exponent_slope",
    "instability_family_member",
    "log_passage_time",
    "minimal_norm_constant",
    "passage_time",
    "predicted_drift",
    "predicted_log_drift",
    "resonant_counterexample",
    "saturation_experiment",
    "stability_bound",
]
