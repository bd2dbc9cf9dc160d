"""Service layer for the `profile` subcommand."""

from __future__ import annotations

import logging
from pathlib import Path

from ..core.diophantine import build_profile, diophantine_constant
from ..models import ExperimentConfig, ProfileReport, ProfileRow
from .output import provenance, resolve_frequency, write_columns, write_report

logger = logging.getLogger(__name__)


def run_profile(config: ExperimentConfig, out_dir: Path) -> list[Path]:
    """Tabulate Ψ on 1..K_max and write profile.json, psi.csv and lambda.csv.

    Args:
        config: Validated experiment configuration.
        out_dir: Directory receiving the output files.

    Returns:
        Paths of the written files.
    """
    freq = resolve_frequency(config)
    profile = build_profile(freq, config.profile.K_max)
    Ks = [K for K, _ in profile.psi_table]
    psi_mid = [float(value.midpoint) for _, value in profile.psi_table]

    report = ProfileReport(
        **provenance(config),
        frequency=freq.name,
        K_max=profile.k_max,
        rows=[ProfileRow(**row) for row in profile.rows()],
        diophantine_constant=diophantine_constant(profile, config.profile.tau),
        tau=config.profile.tau,
    )
    written = [
        write_report(out_dir / "profile.json", report),
        write_columns(out_dir / "psi.csv", ["K", "psi"], [Ks, psi_mid]),
        write_columns(out_dir / "lambda.csv", ["K", "lambda"], [Ks, [K * p for K, p in zip(Ks, psi_mid)]]),
    ]
    logger.info("Profile written to %s", out_dir)
    return written
