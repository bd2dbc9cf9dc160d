"""Affine-in-action trigonometric polynomials with Poisson brackets and majorant norms."""

from .norms import NormLedger, majorant_norm, mode_contributions, mode_weights, vector_field_norm
from .serialization import FunctionDocument, dumps, loads, read_function, write_function
from .series import (
    FourierTaylorFunction,
    action,
    constant,
    cosine,
    linear_hamiltonian,
    poisson_bracket,
    sine,
)
from .truncation import Truncation, angle_average, prune, resonant_projection, truncate_modes
from .window import AnalyticityWindow


def evaluate(f: FourierTaylorFunction, theta, I):
    """Σ_k (a_k + b_k·I) e^{2πi k·θ} in lexicographic mode order."""
    return f.evaluate(theta, I)


__all__ = [
    "AnalyticityWindow",
    "FourierTaylorFunction",
    "FunctionDocument",
    "NormLedger",
    "Truncation",
    "action",
    "angle_average",
    "constant",
    "cosine",
    "dumps",
    "evaluate",
    "linear_hamiltonian",
    "loads",
    "majorant_norm",
    "mode_contributions",
    "mode_weights",
    "poisson_bracket",
    "prune",
    "read_function",
    "resonant_projection",
    "sine",
    "truncate_modes",
    "vector_field_norm",
    "write_function",
]
