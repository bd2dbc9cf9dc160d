"""Service layer for the `normalform` subcommand: remainder decay over K."""

from __future__ import annotations

import logging
import math
from fractions import Fraction
from pathlib import Path

import numpy as np

from ..core.diophantine import ResonanceLattice
from ..core.fourier_taylor import FourierTaylorFunction
from ..core.fourier_taylor.serialization import read_function
from ..core.normal_form import normalize, reference_perturbation
from ..models import ExperimentConfig, NormalFormReport, NormalFormRun
from .output import provenance, resolve_frequency, resolve_window, write_columns, write_report

logger = logging.getLogger(__name__)


def _perturbation(config: ExperimentConfig, window) -> FourierTaylorFunction:
    nf = config.normalform
    if nf.perturbation == "file":
        f = read_function(nf.hamiltonian)
        if f.n != window.n:
            raise ValueError(f"perturbation has n={f.n}, frequency has n={window.n}")
        return f
    return reference_perturbation(nf.eps, window)


def _lattice(config: ExperimentConfig, dim: int) -> ResonanceLattice:
    direction = config.normalform.lattice
    if direction is None:
        return ResonanceLattice.trivial(dim)
    if len(direction) != dim:
        raise ValueError(f"lattice direction has {len(direction)} components, expected {dim}")
    return ResonanceLattice.kernel_of([Fraction(x) for x in direction])


def log_slope(Ks: list[float], remainders: list[float]) -> float | None:
    """Least-squares slope of log N(f′) against K, or None when undefined."""
    points = [(K, math.log(r)) for K, r in zip(Ks, remainders) if r > 0]
    if len({K for K, _ in points}) < 2:
        return None
    x, y = np.array(points).T
    return float(np.polyfit(x, y, 1)[0])


def run_normalform(config: ExperimentConfig, out_dir: Path) -> list[Path]:
    """Normalize once per configured K and write normalform.json and remainder_vs_K.csv."""
    freq = resolve_frequency(config)
    window = resolve_window(config, freq)
    w = freq.exact_vector() if freq.is_exact else freq.omega()
    f = _perturbation(config, window)
    lattice = _lattice(config, freq.dim)
    nf = config.normalform

    runs: list[NormalFormRun] = []
    for K in nf.K:
        result = normalize(w, f, lattice, K, nf.steps)
        runs.append(
            NormalFormRun(
                K=K,
                steps=result.steps_taken,
                remainder_majorant=result.remainder_majorant,
                resonant_norm=result.resonant_norm,
                distance_to_identity=result.distance_to_identity,
                ledger_tail=result.ledger.tail_discarded,
                smallness_ok=result.smallness_ok,
            )
        )
        logger.info("K=%g: remainder majorant %.3e after %d steps", K, result.remainder_majorant, result.steps_taken)

    Ks = [run.K for run in runs]
    remainders = [run.remainder_majorant for run in runs]
    slope = log_slope(Ks, remainders)
    report = NormalFormReport(**provenance(config), eps=nf.eps, runs=runs, log_slope=slope)
    return [
        write_report(out_dir / "normalform.json", report),
        write_columns(out_dir / "remainder_vs_K.csv", ["K", "remainder"], [Ks, remainders]),
    ]
