"""Configuration management for the stability engine.

This module uses Pydantic Settings to load and validate environment variables
for the arithmetic, normal-form and integration defaults. Per-run experiment
parameters live in `hamstab.models.ExperimentConfig` instead.
"""

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Engine settings loaded from `HAMSTAB_*` environment variables."""

    # Interval arithmetic
    refinement_bits: int = Field(default=256, ge=64)
    psi_relative_width: float = Field(default=2.0**-60, gt=0)
    delta_tolerance: float = Field(default=1e-12, gt=0)
    enumeration_budget: int = Field(default=2_000_000, ge=1)

    # Normal form
    smallness_c0: float = Field(default=0.125, gt=0)
    contraction_target: float = Field(default=0.5, gt=0, lt=1)
    lie_order: int = Field(default=10, ge=1)
    mode_budget_factor: float = Field(default=4.0, ge=1)
    prune_tolerance: float = Field(default=1e-60, ge=0)
    small_divisor_floor: float = Field(default=1e-12, gt=0)

    # Integration
    max_integration_steps: int = Field(default=1_000_000_000, ge=1)
    sampled_horizon: float = Field(default=1e6, gt=0)

    # Runtime
    log_level: str = "INFO"
    threads: int = Field(default=1, ge=1)

    model_config = SettingsConfigDict(
        env_prefix="HAMSTAB_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )


# Create a singleton settings instance
_settings: Settings | None = None


def get_settings() -> Settings:
    """Get the engine settings instance (singleton pattern).

    Returns:
        Settings instance with all configuration values loaded.
    """
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings


def reset_settings() -> None:
    """Drop the cached settings so the next call reloads them (useful for testing)."""
    global _settings
    _settings = None
