"""Stability-time ceiling T(ε) = δ ε⁻¹ exp(c₂ Δ(c ε⁻¹)), carried in log-space."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..diophantine import ProfileLike
from ..errors import DeltaOutOfWindow, OutOfRange, ProfileRangeExceeded
from ..fourier_taylor import AnalyticityWindow


@dataclass(frozen=True)
class StabilityConstants:
    """Constants of the stability estimate.

    Attributes:
        c: Scale inside Δ(c/ε).
        c1: Drift confinement factor |I(t) − I₀| <= c1 δ.
        c2: Exponent factor of the ceiling.
        c2_floor: Lower exponent factor used to check the instability floor.
    """

    c: float
    c1: float = 1.0
    c2: float = 1.0
    c2_floor: float = 0.0

    def __post_init__(self) -> None:
        if min(self.c, self.c1, self.c2) <= 0 or self.c2_floor < 0:
            raise ValueError("stability constants must be positive")

    def eps0(self, profile: ProfileLike) -> float:
        """Largest ε for which c/ε still lies in the profile's range."""
        return self.c / profile.lam_range()[0]


def calibrated_constants(window: AnalyticityWindow, c: float) -> StabilityConstants:
    """Constants matched to the instability family on `window`.

    Family members have |k_j|₁ <= 2q_j and K = Δ(c/ε_j) = q_j, so c₂ = 4πσ
    is a ceiling and c₂' = 2πσ a floor for their exponents.
    """
    sigma = window.sigma
    return StabilityConstants(c=c, c1=1.0, c2=4 * math.pi * sigma, c2_floor=2 * math.pi * sigma)


@dataclass(frozen=True)
class StabilityPrediction:
    eps: float
    K: float
    delta_min: float
    delta: float
    log_T: float
    constants_used: tuple[float, float, float]


def delta_window(K: float, constants: StabilityConstants, R: float) -> tuple[float, float]:
    """[δ_min, δ_max) with 1/K <= c₁δ < R/2."""
    return 1.0 / (constants.c1 * K), R / (2 * constants.c1)


def stability_bound(
    profile: ProfileLike, eps: float, delta: float, constants: StabilityConstants, R: float
) -> StabilityPrediction:
    """Evaluate the stability time for perturbation size ε and confinement δ.

    Raises:
        ProfileRangeExceeded: c/ε is outside [Λ(1), Λ(K_max)].
        DeltaOutOfWindow: δ violates 1/K <= c₁δ < R/2.
    """
    if eps <= 0 or delta <= 0:
        raise ValueError("eps and delta must be positive")
    try:
        K = profile.delta(constants.c / eps)
    except OutOfRange as exc:
        raise ProfileRangeExceeded(f"c/eps={constants.c / eps:.6g} outside the profile range: {exc}") from exc

    delta_min, delta_max = delta_window(K, constants, R)
    # Relative slack for δ taken exactly at the lower edge.
    if not (delta_min * (1 - 1e-12) <= delta < delta_max):
        raise DeltaOutOfWindow(f"delta={delta:.6g} outside [{delta_min:.6g}, {delta_max:.6g})")
    log_T = math.log(delta) - math.log(eps) + constants.c2 * K
    return StabilityPrediction(
        eps=eps,
        K=K,
        delta_min=delta_min,
        delta=delta,
        log_T=log_T,
        constants_used=(constants.c, constants.c1, constants.c2),
    )
