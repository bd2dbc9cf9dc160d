"""Weighted-ℓ¹ majorant norms on V_σ(D) and the truncation ledger."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .series import FourierTaylorFunction

logger = logging.getLogger(__name__)


def mode_weights(f: FourierTaylorFunction, sigma: float | None = None) -> np.ndarray:
    """exp(2πσ|k|₁) per stored mode: the sup of |e^{2πi k·θ}| on the strip |Im θ| <= σ."""
    sigma = f.window.sigma if sigma is None else sigma
    return np.exp(2 * np.pi * sigma * f.l1_orders)


def mode_contributions(f: FourierTaylorFunction, sigma: float | None = None) -> np.ndarray:
    """Per-mode terms of the majorant norm, in lexicographic mode order."""
    sigma = f.window.sigma if sigma is None else sigma
    radius = f.window.R + sigma
    coefficient = np.abs(f.a) + radius * np.abs(f.b).sum(axis=1)
    return coefficient * mode_weights(f, sigma)


def majorant_norm(f: FourierTaylorFunction, sigma: float | None = None) -> float:
    """N_σ(f) = Σ_k (|a_k| + (R+σ) Σ_i |b_{k,i}|) e^{2πσ|k|₁} >= sup_{V_σ(D)} |f|.

    Args:
        f: Function to measure.
        sigma: Strip width to measure at; defaults to the function's window.
    """
    if f.is_zero:
        return 0.0
    return float(np.sum(mode_contributions(f, sigma)))


def vector_field_norm(chi: FourierTaylorFunction, sigma: float | None = None) -> float:
    """Majorant of the Hamiltonian vector field (∂χ/∂I, −∂χ/∂θ) in sup-norm.

    Bounds how far the time-one map of χ moves any point of V_σ(D).
    """
    if chi.is_zero:
        return 0.0
    sigma = chi.window.sigma if sigma is None else sigma
    radius = chi.window.R + sigma
    b_abs = np.abs(chi.b).sum(axis=1)
    angle_part = 2 * np.pi * chi.sup_orders * (np.abs(chi.a) + radius * b_abs)
    return float(np.sum((angle_part + b_abs) * mode_weights(chi, sigma)))


@dataclass
class NormLedger:
    """Running account of the majorant norm and everything truncated away.

    Attributes:
        majorant: Latest majorant of the tracked function.
        tail_discarded: Accumulated norm of dropped modes and series tails;
            only ever grows.
        entries: (reason, amount) per recorded discard, in order.
    """

    majorant: float = 0.0
    tail_discarded: float = 0.0
    entries: list[tuple[str, float]] = field(default_factory=list)

    def record(self, amount: float, reason: str) -> None:
        if amount < 0:
            raise ValueError("discarded norm must be nonnegative")
        if amount == 0:
            return
        self.tail_discarded += amount
        self.entries.append((reason, amount))
        logger.debug("Ledger += %.3e (%s), total %.3e", amount, reason, self.tail_discarded)

    def update_majorant(self, f: FourierTaylorFunction) -> float:
        self.majorant = majorant_norm(f)
        return self.majorant
