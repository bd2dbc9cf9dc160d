"""Iterated resonant averaging: H = l_w + f  ->  l_w + g + f′.

Each step removes the modes of the current perturbation that lie outside the
target lattice with |k|_inf <= K by a Lie transform generated from the
homological equation. Truncations beyond the mode budget and pruned
coefficients are booked in a `NormLedger`; the window shrinks linearly from
σ to σ/2 over the requested steps.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from ..config import get_settings
from ..diophantine.lattice import ResonanceLattice, is_nonresonant_mod_lattice
from ..errors import DenominatorTooSmall, StepBudget
from ..fourier_taylor import (
    AnalyticityWindow,
    FourierTaylorFunction,
    NormLedger,
    angle_average,
    cosine,
    linear_hamiltonian,
    majorant_norm,
    prune,
    resonant_projection,
    truncate_modes,
    vector_field_norm,
)
from .homological import check_smallness, solve_homological
from .lie import lie_transform

logger = logging.getLogger(__name__)


@dataclass
class NormalFormResult:
    """Decomposition H∘Φ = l_w + g + f′ produced by `normalize`.

    Attributes:
        transformed: l_w + g + f′ as computed.
        g: Lattice-resonant part.
        average: Angle average of g.
        remainder: f′, everything outside the lattice, at the shrunk window.
        ledger: Discarded norm accounting (truncations, pruning, Lie tails).
        generators: χ_1..χ_r in application order.
        distance_to_identity: Σ_s of the vector-field majorants of χ_s.
        shrunk_window: Final window (σ/2).
        smallness_ok: Outcome of the advisory smallness gate.
        divisor_floor: Smallest |k·w| over nonresonant modes with |k|_inf <= K.
    """

    transformed: FourierTaylorFunction
    g: FourierTaylorFunction
    average: FourierTaylorFunction
    remainder: FourierTaylorFunction
    ledger: NormLedger
    generators: list[FourierTaylorFunction] = field(default_factory=list)
    distance_to_identity: float = 0.0
    shrunk_window: AnalyticityWindow | None = None
    smallness_ok: bool = True
    divisor_floor: float = math.inf

    @property
    def remainder_majorant(self) -> float:
        return majorant_norm(self.remainder)

    @property
    def resonant_norm(self) -> float:
        return majorant_norm(self.g)

    @property
    def steps_taken(self) -> int:
        return len(self.generators)


def _nonresonant_low(
    f: FourierTaylorFunction, lattice: ResonanceLattice, K: float
) -> FourierTaylorFunction:
    low = truncate_modes(f, K).low
    return resonant_projection(low, lattice)[1]


def normalize(
    w: Sequence[float | Fraction],
    f: FourierTaylorFunction,
    lattice: ResonanceLattice,
    K: float,
    steps: int,
) -> NormalFormResult:
    """Resonant normal form of l_w + f modulo `lattice` up to order K.

    Args:
        w: Frequency of the linear part l_w(I) = w·I.
        f: Perturbation on the starting window σ.
        lattice: Target resonance lattice (trivial or a kernel lattice).
        K: Truncation order of the modes to eliminate.
        steps: Maximum number of averaging steps.

    Returns:
        NormalFormResult with the remainder reported on the σ/2 window.

    Raises:
        SmallDivisorBreach: propagated from the homological solve.
        SeriesDivergence: propagated from the Lie transform.
        StepBudget: a step failed to contract the nonresonant norm.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    settings = get_settings()
    window = f.window
    sigma = window.sigma
    w_float = np.array([float(x) for x in w])
    l_w = linear_hamiltonian(w_float, window)

    initial_norm = majorant_norm(f)
    divisor_floor = is_nonresonant_mod_lattice(w, lattice, 0.0, K).min_divisor
    smallness_ok = True
    if math.isfinite(divisor_floor) and divisor_floor > 0:
        smallness_ok = check_smallness(K, divisor_floor, initial_norm)
    if not smallness_ok:
        logger.warning(
            "Smallness gate failed: K=%g, lambda=%.3e, eps=%.3e; proceeding", K, divisor_floor, initial_norm
        )

    prune_floor = settings.prune_tolerance * initial_norm
    mode_cap = settings.mode_budget_factor * K
    ledger = NormLedger()
    generators: list[FourierTaylorFunction] = []
    distance = 0.0
    current = f

    for step in range(1, steps + 1):
        f_nr = _nonresonant_low(current, lattice, K)
        nr_norm = majorant_norm(f_nr)
        if nr_norm == 0 or nr_norm <= prune_floor:
            break

        chi = solve_homological(f_nr, w_float, lattice, K)
        series = lie_transform(l_w.at_window(current.window) + current, chi, ledger=ledger, prune_floor=prune_floor)
        updated = series.result - l_w.at_window(current.window)
        updated = truncate_modes(updated, mode_cap, ledger).low
        updated = prune(updated, prune_floor, ledger)

        step_window = window.with_sigma(sigma * (1 - step / (2 * steps)))
        updated = updated.at_window(step_window)
        generators.append(chi)
        distance += vector_field_norm(chi)

        new_nr_norm = majorant_norm(_nonresonant_low(updated, lattice, K))
        if new_nr_norm > settings.contraction_target * nr_norm:
            raise StepBudget(
                f"step {step}: nonresonant norm {nr_norm:.3e} -> {new_nr_norm:.3e} "
                f"misses contraction {settings.contraction_target}"
            )
        logger.info("Normal form step %d: nonresonant norm %.3e -> %.3e", step, nr_norm, new_nr_norm)
        current = updated

    shrunk = window.with_sigma(sigma / 2)
    current = current.at_window(shrunk)
    g, remainder = resonant_projection(current, lattice)
    ledger.update_majorant(current)
    return NormalFormResult(
        transformed=l_w.at_window(shrunk) + current,
        g=g,
        average=angle_average(g),
        remainder=remainder,
        ledger=ledger,
        generators=generators,
        distance_to_identity=distance,
        shrunk_window=shrunk,
        smallness_ok=smallness_ok,
        divisor_floor=divisor_floor,
    )


class ResonantSplit(NamedTuple):
    """g = ḡ + g′ for a one-phase resonant g."""

    average: FourierTaylorFunction
    low: FourierTaylorFunction
    tail_norm: float
    tail_bound: float
    high: FourierTaylorFunction


def split_resonant_average(
    g: FourierTaylorFunction, v: Sequence[Fraction | int | str], K: float
) -> ResonantSplit:
    """Split a v-resonant g (v = (1, p/q)) into its average and the oscillating part.

    Every oscillating mode has |k|_inf >= q > K, so `low` is empty and the
    oscillating part measured at half of g's strip is bounded by
    N(g′)·exp(−2π(σ/2)K) with σ the strip of g.

    Raises:
        DenominatorTooSmall: q <= K.
    """
    direction = tuple(Fraction(x) for x in v)
    if len(direction) != 2 or direction[0] != 1:
        raise ValueError("one-phase splitting expects v = (1, p/q)")
    q = direction[1].denominator
    if q <= K:
        raise DenominatorTooSmall(f"denominator q={q} does not exceed K={K:g}")

    lattice = ResonanceLattice.kernel_of(direction)
    resonant, stray = resonant_projection(g, lattice)
    if not stray.is_zero:
        raise ValueError("g has modes outside the kernel lattice of v")

    average = angle_average(resonant)
    oscillating = resonant - average
    if not oscillating.is_zero and oscillating.sup_orders.min() < q:
        raise ValueError("resonant mode below the denominator; lattice membership is inconsistent")
    split = truncate_modes(oscillating, K)
    sigma = g.window.sigma
    tail_norm = majorant_norm(split.high, sigma / 2)
    tail_bound = majorant_norm(oscillating) * math.exp(-2 * math.pi * (sigma / 2) * K)
    return ResonantSplit(average, split.low, tail_norm, tail_bound, split.high)


def reference_perturbation(eps: float, window: AnalyticityWindow) -> FourierTaylorFunction:
    """ε(1 + I_1)(cos 2πθ_1 + cos 2π(θ_1 + θ_2)), the benchmark perturbation for remainder decay."""
    if window.n < 2:
        raise ValueError("reference perturbation needs n >= 2")
    e1 = (1,) + (0,) * (window.n - 1)
    e12 = (1, 1) + (0,) * (window.n - 2)
    trig = cosine(window, e1) + cosine(window, e12)
    return (trig + trig.times_action(0)) * eps
