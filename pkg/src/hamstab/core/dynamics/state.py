"""Phase-space states, sampled trajectories and their CSV export."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np


def reduce_angles(theta: np.ndarray) -> np.ndarray:
    """Angles mod 1 in [0, 1)."""
    reduced = np.mod(theta, 1.0)
    # np.mod can return exactly 1.0 for tiny negative inputs
    return np.where(reduced >= 1.0, 0.0, reduced)


def angle_distance(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Componentwise distance on the circle R/Z."""
    d = np.mod(np.asarray(a) - np.asarray(b), 1.0)
    return np.minimum(d, 1.0 - d)


@dataclass(frozen=True, eq=False)
class State:
    """Point (θ, I) of T^n × R^n with θ stored reduced mod 1."""

    theta: np.ndarray
    I: np.ndarray

    def __post_init__(self) -> None:
        theta = reduce_angles(np.asarray(self.theta, dtype=float))
        I = np.array(self.I, dtype=float)
        if theta.shape != I.shape or theta.ndim != 1:
            raise ValueError("theta and I must be vectors of equal length")
        theta.setflags(write=False)
        I.setflags(write=False)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "I", I)

    @property
    def n(self) -> int:
        return int(self.theta.shape[0])

    def distance(self, other: State) -> float:
        """Sup-norm distance with angles measured on the circle."""
        return float(max(angle_distance(self.theta, other.theta).max(), np.abs(self.I - other.I).max()))


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Samples t_i, θ_i, I_i and the energy H_i, with strictly increasing times."""

    times: np.ndarray
    theta: np.ndarray
    I: np.ndarray
    H_values: np.ndarray

    def __post_init__(self) -> None:
        times = np.asarray(self.times, dtype=float).reshape(-1)
        theta = np.asarray(self.theta, dtype=float).reshape(times.size, -1)
        I = np.asarray(self.I, dtype=float).reshape(times.size, -1)
        H = np.asarray(self.H_values, dtype=float).reshape(-1)
        if not (theta.shape == I.shape and H.size == times.size):
            raise ValueError("trajectory arrays have mismatched lengths")
        if times.size == 0:
            raise ValueError("a trajectory needs at least one sample")
        if np.any(np.diff(times) <= 0):
            raise ValueError("trajectory times must be strictly increasing")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "I", I)
        object.__setattr__(self, "H_values", H)

    def __len__(self) -> int:
        return int(self.times.size)

    @property
    def states(self) -> list[State]:
        return [State(th, act) for th, act in zip(self.theta, self.I)]

    @property
    def n(self) -> int:
        return int(self.theta.shape[1])

    def energy_error(self) -> np.ndarray:
        return np.abs(self.H_values - self.H_values[0])


def csv_header(n: int) -> list[str]:
    return ["t"] + [f"theta_{i}" for i in range(1, n + 1)] + [f"I_{i}" for i in range(1, n + 1)] + ["H"]


def write_trajectory_csv(traj: Trajectory, path: Path | str) -> None:
    """Write `t,theta_1..theta_n,I_1..I_n,H` rows with 17 significant digits."""
    table = np.column_stack([traj.times, traj.theta, traj.I, traj.H_values])
    np.savetxt(path, table, fmt="%.17g", delimiter=",", header=",".join(csv_header(traj.n)), comments="")


def read_trajectory_csv(path: Path | str) -> Trajectory:
    table = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    n = (table.shape[1] - 2) // 2
    return Trajectory(table[:, 0], table[:, 1 : 1 + n], table[:, 1 + n : 1 + 2 * n], table[:, -1])

