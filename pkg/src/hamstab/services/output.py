"""Writers for the JSON reports and two-column plot-data files."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import numpy as np
from pydantic import BaseModel

from .. import __version__
from ..core.diophantine import Frequency, frequency_from_preset
from ..core.fourier_taylor import AnalyticityWindow
from ..models import ExperimentConfig


def provenance(config: ExperimentConfig) -> dict:
    return {"version": __version__, "config": config.model_dump(mode="json", by_alias=True)}


def resolve_frequency(config: ExperimentConfig) -> Frequency:
    return frequency_from_preset(config.frequency)


def resolve_window(config: ExperimentConfig, freq: Frequency) -> AnalyticityWindow:
    return AnalyticityWindow(sigma=config.window.sigma, R=config.window.R, n=config.window.n or freq.dim)


def write_report(path: Path, report: BaseModel) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(report.model_dump_json(indent=2) + "\n", encoding="utf-8")
    return path


def write_columns(path: Path, header: Sequence[str], columns: Sequence[Sequence[float]]) -> Path:
    """Plain comma-separated columns with a one-line header and 17 significant digits."""
    path.parent.mkdir(parents=True, exist_ok=True)
    table = np.column_stack([np.asarray(c, dtype=float) for c in columns]) if columns and len(columns[0]) else np.empty((0, len(header)))
    np.savetxt(path, table, fmt="%.17g", delimiter=",", header=",".join(header), comments="")
    return path
