"""Experiment configuration and report documents for the command-line front door."""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .core.diophantine import frequency_from_preset
from .core.fourier_taylor.serialization import FunctionDocument


class WindowConfig(BaseModel):
    """Analyticity window; `n` defaults to the frequency dimension."""

    model_config = ConfigDict(extra="forbid")

    sigma: float = Field(default=0.1, gt=0)
    R: float = Field(default=2.0, gt=1)
    n: int | None = Field(default=None, ge=2)


class ConstantsConfig(BaseModel):
    """Stability constants. `c` and `c2` default to values calibrated from the window."""

    model_config = ConfigDict(extra="forbid")

    c: float | None = Field(default=None, gt=0)
    c1: float = Field(default=1.0, gt=0)
    c2: float | None = Field(default=None, gt=0)
    c0: float = Field(default=0.125, gt=0)


class ProfileConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    K_max: int = Field(default=50, ge=1)
    tau: float = Field(default=1.0, ge=0)


class ConstructConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    j: list[int] = Field(default_factory=lambda: [2])
    check_norms: bool = True

    @field_validator("j")
    @classmethod
    def _nonnegative(cls, value: list[int]) -> list[int]:
        if any(j < 0 for j in value):
            raise ValueError("member indices must be >= 0")
        return value


class SimulateConfig(BaseModel):
    """Integration run on a Hamiltonian interchange file."""

    model_config = ConfigDict(extra="forbid")

    hamiltonian: Path | None = None
    theta0: list[float] | None = None
    I0: list[float] | None = None
    random_start: bool = False
    t_end: float = Field(default=1000.0, ge=0)
    dt: float = Field(default=1e-3, gt=0)
    sample_every: int = Field(default=1000, ge=1)
    deltas: list[float] = Field(default_factory=list)

    @field_validator("deltas")
    @classmethod
    def _positive(cls, value: list[float]) -> list[float]:
        if any(d <= 0 for d in value):
            raise ValueError("drift thresholds must be positive")
        return value


class VerifyConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    j: list[int] = Field(default_factory=lambda: [1, 2, 3, 4])
    delta_reference: float = Field(default=0.1, gt=0)
    samples: int = Field(default=10_001, ge=2)
    check_horizon: float = Field(default=1e3, gt=0)
    dt: float = Field(default=1e-3, gt=0)

    @field_validator("j")
    @classmethod
    def _nonnegative(cls, value: list[int]) -> list[int]:
        if any(j < 0 for j in value):
            raise ValueError("member indices must be >= 0")
        return value


class NormalFormConfig(BaseModel):
    """Normal-form sweep over K; `lattice` is a rational direction, absent for the trivial lattice."""

    model_config = ConfigDict(extra="forbid")

    eps: float = Field(default=1e-4, gt=0)
    K: list[float] = Field(default_factory=lambda: [4.0, 6.0, 8.0, 10.0])
    steps: int = Field(default=40, ge=1)
    lattice: list[str] | None = None
    perturbation: Literal["reference", "file"] = "reference"
    hamiltonian: Path | None = None

    @field_validator("K")
    @classmethod
    def _orders(cls, value: list[float]) -> list[float]:
        if any(k < 1 for k in value):
            raise ValueError("truncation orders must be >= 1")
        return value

    @field_validator("lattice")
    @classmethod
    def _rational(cls, value: list[str] | None) -> list[str] | None:
        for x in value or []:
            Fraction(x)
        return value

    @model_validator(mode="after")
    def _file_needs_path(self) -> NormalFormConfig:
        if self.perturbation == "file" and self.hamiltonian is None:
            raise ValueError("perturbation 'file' needs a hamiltonian path")
        return self


class ExperimentConfig(BaseModel):
    """One run's parameters, validated before any computation."""

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    frequency: str | list[str] = "sqrt2m1"
    window: WindowConfig = Field(default_factory=WindowConfig)
    constants: ConstantsConfig = Field(default_factory=ConstantsConfig)
    profile: ProfileConfig = Field(default_factory=ProfileConfig)
    construction: ConstructConfig = Field(default_factory=ConstructConfig, alias="construct")
    simulate: SimulateConfig = Field(default_factory=SimulateConfig)
    verify: VerifyConfig = Field(default_factory=VerifyConfig)
    normalform: NormalFormConfig = Field(default_factory=NormalFormConfig)
    seed: int = 0
    output_dir: Path = Path("out")

    @field_validator("frequency")
    @classmethod
    def _known_preset(cls, value: str | list[str]) -> str | list[str]:
        frequency_from_preset(value)
        return value

    @model_validator(mode="after")
    def _window_dimension(self) -> ExperimentConfig:
        dim = frequency_from_preset(self.frequency).dim
        if self.window.n is not None and self.window.n != dim:
            raise ValueError(f"window.n={self.window.n} differs from the frequency dimension {dim}")
        return self


class Provenance(BaseModel):
    """Fields embedded in every output document."""

    version: str
    config: dict


class ProfileRow(BaseModel):
    K: int
    psi_lo: float
    psi_hi: float


class ProfileReport(Provenance):
    frequency: str
    K_max: int
    rows: list[ProfileRow]
    diophantine_constant: float
    tau: float


class HamiltonianReport(Provenance):
    """A constructed Hamiltonian; `simulate` reads it back through the nested key."""

    hamiltonian: FunctionDocument


class MemberReport(Provenance):
    j: int
    p: int
    q: int
    v: list[str]
    k: list[int]
    c: float
    eps_j: float
    mu_j: float
    psi_q: float
    log_rate: float
    norm_f1: float
    norm_f2: float


class SimulationReport(Provenance):
    steps: int
    samples: int
    sup_drift: float
    first_passage: dict[str, float | None]
    max_energy_error: float


class NormalFormRun(BaseModel):
    K: float
    steps: int
    remainder_majorant: float
    resonant_norm: float
    distance_to_identity: float
    ledger_tail: float
    smallness_ok: bool


class NormalFormReport(Provenance):
    eps: float
    runs: list[NormalFormRun]
    log_slope: float | None


class SaturationMember(BaseModel):
    j: int
    p: int
    q: int
    eps_j: float
    log_rate: float
    K: float
    delta_grid: list[float]
    t_measured: list[float | None]
    log_t_measured: list[float]
    log_T_predicted: list[float]
    ratios: list[float]
    method: str
    sample_interval: float
    delta_reference: float
    log_t_reference: float
    integrator_error: float | None
    notes: list[str]


class SaturationReport(Provenance):
    constants: dict[str, float]
    members: list[SaturationMember]
    exponent_slope: float | None
    ceiling_ok: bool
    floor_ok: bool
