"""Closed-form flows of single-resonance Hamiltonians v·I − A sin(2π(k·θ + phase))."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

from ..diophantine.lattice import exact_dot
from ..errors import NotResonant
from .state import State, Trajectory, reduce_angles


def _require_resonance(v: Sequence[Fraction | int | str], k: Sequence[int]) -> np.ndarray:
    direction = [Fraction(x) for x in v]
    if len(direction) != len(k):
        raise ValueError("v and k must have the same dimension")
    if exact_dot(k, direction) != 0:
        raise NotResonant(f"k={tuple(k)} is not orthogonal to v")
    return np.array([float(x) for x in direction])


def exact_flow_single_resonance(
    v: Sequence[Fraction | int | str],
    k: Sequence[int],
    amplitude: float,
    phase: float,
    z0: State,
    t: float,
) -> State:
    """Time-t map of H = v·I − A sin(2π(k·θ + phase)) with k·v = 0.

    k·θ is conserved, so the force is constant along the orbit:
    θ(t) = θ₀ + t v and I(t) = I₀ + 2πA t k cos(2π(k·θ₀ + phase)).

    Raises:
        NotResonant: k·v != 0 in exact arithmetic.
    """
    v_float = _require_resonance(v, k)
    k_arr = np.asarray(k, dtype=float)
    force = 2 * np.pi * amplitude * k_arr * np.cos(2 * np.pi * (k_arr @ z0.theta + phase))
    return State(z0.theta + t * v_float, z0.I + t * force)


def single_resonance_energy(
    v: np.ndarray, k: Sequence[int], amplitude: float, phase: float, theta: np.ndarray, I: np.ndarray
) -> np.ndarray:
    k_arr = np.asarray(k, dtype=float)
    return I @ v - amplitude * np.sin(2 * np.pi * (theta @ k_arr + phase))


def sample_exact_flow(
    v: Sequence[Fraction | int | str],
    k: Sequence[int],
    amplitude: float,
    phase: float,
    z0: State,
    times: Sequence[float],
) -> Trajectory:
    """Trajectory of the closed-form flow at the given increasing sample times."""
    v_float = _require_resonance(v, k)
    times = np.asarray(times, dtype=float)
    k_arr = np.asarray(k, dtype=float)
    force = 2 * np.pi * amplitude * k_arr * np.cos(2 * np.pi * (k_arr @ z0.theta + phase))
    theta = reduce_angles(z0.theta[None, :] + times[:, None] * v_float[None, :])
    I = z0.I[None, :] + times[:, None] * force[None, :]
    H = single_resonance_energy(v_float, k, amplitude, phase, theta, I)
    return Trajectory(times, theta, I, H)
