"""Service layer for the `simulate` subcommand."""

from __future__ import annotations

import logging
from pathlib import Path

import numpy as np

from ..core.constructions import instability_family_member
from ..core.dynamics import State, integrate, measure_drift, write_trajectory_csv
from ..core.fourier_taylor import FourierTaylorFunction
from ..core.fourier_taylor.serialization import read_function
from ..models import ExperimentConfig, SimulationReport
from .construct_service import resolve_c
from .output import provenance, resolve_frequency, resolve_window, write_report

logger = logging.getLogger(__name__)


def load_hamiltonian(config: ExperimentConfig) -> FourierTaylorFunction:
    """The configured interchange file, or the first `construct` member when none is given."""
    if config.simulate.hamiltonian is not None:
        return read_function(config.simulate.hamiltonian)
    if not config.construction.j:
        raise ValueError("simulate needs a hamiltonian file or a construct member index")
    freq = resolve_frequency(config)
    window = resolve_window(config, freq)
    j = config.construction.j[0]
    c = resolve_c(config, freq, window, [j])
    logger.info("No Hamiltonian file given; simulating family member j=%d", j)
    return instability_family_member(freq, window, j, c, check_norms=config.construction.check_norms).hamiltonian


def initial_state(config: ExperimentConfig, n: int) -> State:
    sim = config.simulate
    if sim.random_start:
        rng = np.random.default_rng(config.seed)
        return State(rng.random(n), np.zeros(n) if sim.I0 is None else np.asarray(sim.I0, dtype=float))
    theta = np.zeros(n) if sim.theta0 is None else np.asarray(sim.theta0, dtype=float)
    I = np.zeros(n) if sim.I0 is None else np.asarray(sim.I0, dtype=float)
    if theta.shape != (n,) or I.shape != (n,):
        raise ValueError(f"initial state must have {n} angles and {n} actions")
    return State(theta, I)


def run_simulate(config: ExperimentConfig, out_dir: Path) -> list[Path]:
    """Integrate the Hamiltonian and write trajectory.csv and simulate.json.

    Raises:
        NotSeparable: the Hamiltonian couples angles and actions.
    """
    H = load_hamiltonian(config)
    sim = config.simulate
    z0 = initial_state(config, H.n)
    trajectory = integrate(H, z0, sim.t_end, sim.dt, sim.sample_every)
    drift = measure_drift(trajectory, sim.deltas)

    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / "trajectory.csv"
    write_trajectory_csv(trajectory, csv_path)
    report = SimulationReport(
        **provenance(config),
        steps=int(round(sim.t_end / sim.dt)),
        samples=len(trajectory),
        sup_drift=drift.sup_drift,
        first_passage={f"{delta:g}": t for delta, t in drift.first_passage.items()},
        max_energy_error=float(trajectory.energy_error().max()),
    )
    logger.info("Simulated %d samples, sup drift %.6g", len(trajectory), drift.sup_drift)
    return [csv_path, write_report(out_dir / "simulate.json", report)]
