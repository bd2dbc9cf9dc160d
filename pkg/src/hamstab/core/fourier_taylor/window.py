"""Complex neighbourhoods V_σ(D) on which majorant norms are taken."""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class AnalyticityWindow:
    """Strip half-width `sigma` in the angles and action ball radius `R` in dimension `n`.

    Attributes:
        sigma: Imaginary half-width of the angle strip, also the complex
            extension of the action ball.
        R: Sup-norm radius of the real action ball.
        n: Number of degrees of freedom.
    """

    sigma: float
    R: float
    n: int

    def __post_init__(self) -> None:
        if not self.sigma > 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")
        if not self.R > 1:
            raise ValueError(f"R must exceed 1, got {self.R}")
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")

    @property
    def action_radius(self) -> float:
        """Sup of |I_i| over the complexified action domain."""
        return self.R + self.sigma

    def with_sigma(self, sigma: float) -> AnalyticityWindow:
        return replace(self, sigma=sigma)

    def shrink(self, factor: float) -> AnalyticityWindow:
        return self.with_sigma(self.sigma * factor)
