"""Service layer for the `verify` subcommand: the saturation experiment."""

from __future__ import annotations

import dataclasses
import logging
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from ..core.constructions import (
    SaturationReport,
    StabilityConstants,
    calibrated_constants,
    exponent_slope,
    saturation_experiment,
)
from ..core.diophantine import build_profile, convergents
from ..core.fourier_taylor import AnalyticityWindow
from ..models import ExperimentConfig, SaturationMember
from ..models import SaturationReport as SaturationDocument
from .construct_service import resolve_c
from .output import provenance, resolve_frequency, resolve_window, write_columns, write_report

logger = logging.getLogger(__name__)


def resolve_constants(config: ExperimentConfig, window: AnalyticityWindow, c: float) -> StabilityConstants:
    """Window-calibrated constants with any configured c₁, c₂ applied on top."""
    constants = calibrated_constants(window, c)
    overrides: dict[str, float] = {"c1": config.constants.c1}
    if config.constants.c2 is not None:
        overrides["c2"] = config.constants.c2
    return dataclasses.replace(constants, **overrides)


def run_verify(config: ExperimentConfig, out_dir: Path, threads: int = 1) -> list[Path]:
    """Run the saturation experiment over the configured members.

    Writes saturation.json, log_t_vs_q.csv and measured_vs_predicted.csv.
    Members are independent and run on a thread pool of size `threads`.
    """
    indices = sorted(set(config.verify.j))
    if not indices:
        raise ValueError("verify needs at least one member index")
    freq = resolve_frequency(config)
    window = resolve_window(config, freq)
    c = resolve_c(config, freq, window, indices)
    constants = resolve_constants(config, window, c)

    q_max = max(conv.q for conv in convergents(freq, 0, indices[-1] + 1))
    profile = build_profile(freq, max(q_max, 2))

    verify = config.verify

    def run_one(j: int) -> SaturationReport:
        return saturation_experiment(
            freq,
            window,
            j,
            constants,
            profile,
            delta_reference=verify.delta_reference,
            samples=verify.samples,
            check_horizon=verify.check_horizon,
            dt=verify.dt,
        )

    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        reports = list(pool.map(run_one, indices))

    slope = exponent_slope(reports) if len(reports) >= 2 else None
    ceiling_ok = all(r.ceiling_ok() for r in reports)
    floor_ok = all(r.floor_ok(constants) for r in reports)
    if not ceiling_ok:
        logger.warning("Measured passage times exceed the stability ceiling")
    logger.info("Saturation: slope=%s, ceiling_ok=%s, floor_ok=%s", slope, ceiling_ok, floor_ok)

    document = SaturationDocument(
        **provenance(config),
        constants={
            "c": constants.c,
            "c1": constants.c1,
            "c2": constants.c2,
            "c2_floor": constants.c2_floor,
            "eps0": constants.eps0(profile),
        },
        members=[SaturationMember(**r.to_record()) for r in reports],
        exponent_slope=slope,
        ceiling_ok=ceiling_ok,
        floor_ok=floor_ok,
    )

    rows = [(r.q, d, m, p) for r in reports for d, m, p in zip(r.delta_grid, r.log_t_measured, r.log_T_predicted)]
    return [
        write_report(out_dir / "saturation.json", document),
        write_columns(
            out_dir / "log_t_vs_q.csv",
            ["q", "log_t"],
            [[r.q for r in reports], [r.log_t_reference for r in reports]],
        ),
        write_columns(
            out_dir / "measured_vs_predicted.csv",
            ["q", "delta", "log_t_measured", "log_T_predicted"],
            [list(col) for col in zip(*rows)] if rows else [[], [], [], []],
        ),
    ]
