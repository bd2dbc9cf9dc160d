"""Lie-series resonant normal forms with tracked remainders."""

from .averaging import (
    NormalFormResult,
    ResonantSplit,
    normalize,
    reference_perturbation,
    split_resonant_average,
)
from .chain import OnePhaseReport, one_phase_stability_chain
from .homological import check_smallness, solve_homological
from .lie import LieSeries, lie_transform

__all__ = [
    "LieSeries",
    "NormalFormResult",
    "OnePhaseReport",
    "ResonantSplit",
    "check_smallness",
    "lie_transform",
    "normalize",
    "one_phase_stability_chain",
    "reference_perturbation",
    "solve_homological",
    "split_resonant_average",
]
