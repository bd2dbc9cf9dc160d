"""Resonant linear Hamiltonians are not effectively stable: an explicit witness."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from ..diophantine import Frequency, find_resonance, l1_norm, sup_norm
from ..dynamics import State
from ..errors import NonResonant
from ..fourier_taylor import AnalyticityWindow, FourierTaylorFunction, linear_hamiltonian, sine


@dataclass(frozen=True)
class ResonantCounterexample:
    """H = ω·I − A sin(2π k·θ) with A chosen so the perturbation has majorant ε."""

    omega: tuple[Fraction, ...]
    k: tuple[int, ...]
    eps: float
    amplitude: float
    H: FourierTaylorFunction
    worst_z0: State
    drift_rate: float

    @property
    def horizon(self) -> float:
        return 1.0 / self.eps

    @property
    def predicted_sup_drift(self) -> float:
        """Drift reached at t = 1/ε."""
        return self.drift_rate * self.horizon


def _exact_components(omega: Frequency | Sequence[Fraction | int | str]) -> tuple[Fraction, ...]:
    if isinstance(omega, Frequency):
        if not omega.is_exact:
            raise NonResonant(f"frequency {omega.name} has irrational components")
        return omega.exact_vector()
    return tuple(Fraction(x) for x in omega)


def resonant_counterexample(
    omega: Frequency | Sequence[Fraction | int | str], eps: float, window: AnalyticityWindow
) -> ResonantCounterexample:
    """Build the drifting system for a resonant ω.

    The perturbation −A sin(2π k·θ) with A = ε e^{−2πσ|k|₁} has majorant ε;
    from θ₀ = 0 the actions drift linearly at rate 2π|k|_inf A.

    Raises:
        NonResonant: ω has no integer relation.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    components = _exact_components(omega)
    if len(components) != window.n:
        raise ValueError(f"omega has {len(components)} components, window expects {window.n}")
    k = find_resonance(components)
    if k is None:
        raise NonResonant(f"omega={components} admits no integer relation")

    amplitude = eps / math.exp(2 * math.pi * window.sigma * l1_norm(k))
    H = linear_hamiltonian([float(x) for x in components], window) - sine(window, k, amplitude)
    z0 = State(np.zeros(window.n), np.zeros(window.n))
    rate = 2 * math.pi * sup_norm(k) * amplitude
    return ResonantCounterexample(components, k, eps, amplitude, H, z0, rate)
