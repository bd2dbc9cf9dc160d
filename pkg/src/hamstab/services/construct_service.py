"""Service layer for the `construct` subcommand."""

from __future__ import annotations

import logging
from pathlib import Path

from ..core.constructions import InstabilityMember, default_c, instability_family_member
from ..core.diophantine import Frequency
from ..core.fourier_taylor import AnalyticityWindow, majorant_norm
from ..core.fourier_taylor.serialization import to_document
from ..models import ExperimentConfig, HamiltonianReport, MemberReport
from .output import provenance, resolve_frequency, resolve_window, write_report

logger = logging.getLogger(__name__)


def resolve_c(config: ExperimentConfig, freq: Frequency, window: AnalyticityWindow, indices: list[int]) -> float:
    """Configured c, or the smallest value passing the norm budget for `indices`."""
    if config.constants.c is not None:
        return config.constants.c
    return default_c(freq, window, indices)


def member_report(config: ExperimentConfig, member: InstabilityMember, c: float) -> MemberReport:
    return MemberReport(
        **provenance(config),
        j=member.j,
        p=member.p,
        q=member.q,
        v=[str(x) for x in member.v],
        k=list(member.k),
        c=c,
        eps_j=member.eps,
        mu_j=member.mu,
        psi_q=member.psi_q,
        log_rate=member.predicted_log_rate,
        norm_f1=majorant_norm(member.f1),
        norm_f2=majorant_norm(member.f2),
    )


def run_construct(config: ExperimentConfig, out_dir: Path) -> list[Path]:
    """Build the requested family members and write member_j{j}.json and hamiltonian_j{j}.json.

    An empty index list writes nothing.

    Raises:
        NormBudgetExceeded: a member violates the norm budget for the configured c.
    """
    indices = config.construction.j
    if not indices:
        logger.info("No members requested")
        return []
    freq = resolve_frequency(config)
    window = resolve_window(config, freq)
    c = resolve_c(config, freq, window, indices)

    written: list[Path] = []
    for j in indices:
        member = instability_family_member(freq, window, j, c, check_norms=config.construction.check_norms)
        written.append(write_report(out_dir / f"member_j{j}.json", member_report(config, member, c)))
        hamiltonian = HamiltonianReport(**provenance(config), hamiltonian=to_document(member.hamiltonian))
        written.append(write_report(out_dir / f"hamiltonian_j{j}.json", hamiltonian))
    return written
