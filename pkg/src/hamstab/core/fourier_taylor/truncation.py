"""Mode-set splitting: sup-norm truncation, resonant projection and pruning."""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from ..diophantine.lattice import ResonanceLattice
from .norms import NormLedger, majorant_norm, mode_contributions
from .series import FourierTaylorFunction


class Truncation(NamedTuple):
    low: FourierTaylorFunction
    tail_norm: float
    high: FourierTaylorFunction


def truncate_modes(
    f: FourierTaylorFunction, K: float, ledger: NormLedger | None = None
) -> Truncation:
    """Split f into modes with |k|_inf <= K and the rest.

    tail_norm is the exact majorant of the discarded part at f's window and
    is recorded into `ledger` when one is given.
    """
    if K < 1:
        raise ValueError("truncation order K must be >= 1")
    keep = f.sup_orders <= K
    low, high = f.select(keep), f.select(~keep)
    tail = majorant_norm(high)
    if ledger is not None:
        ledger.record(tail, f"modes beyond |k|={K:g}")
    return Truncation(low, tail, high)


def as_lattice(lattice: ResonanceLattice | Sequence[Fraction | int | str], n: int) -> ResonanceLattice:
    if isinstance(lattice, ResonanceLattice):
        if lattice.dim != n:
            raise ValueError(f"lattice of dimension {lattice.dim} used with n={n}")
        return lattice
    return ResonanceLattice.kernel_of(lattice)


def resonant_projection(
    f: FourierTaylorFunction, lattice: ResonanceLattice | Sequence[Fraction | int | str]
) -> tuple[FourierTaylorFunction, FourierTaylorFunction]:
    """(resonant, nonresonant) split by exact lattice membership of each mode.

    `lattice` may also be a rational direction v, meaning the kernel lattice
    {k : k·v = 0}. For the trivial lattice the resonant part is the angle
    average a_0 + b_0·I.
    """
    lattice = as_lattice(lattice, f.n)
    if f.is_zero:
        return f, f
    inside = lattice.contains_many(f.keys)
    return f.select(inside), f.select(~inside)


def angle_average(f: FourierTaylorFunction) -> FourierTaylorFunction:
    return f.select(~f.keys.any(axis=1))


def prune(
    f: FourierTaylorFunction, threshold: float, ledger: NormLedger | None = None
) -> FourierTaylorFunction:
    """Drop modes whose majorant contribution is below `threshold`, booking them in the ledger."""
    if f.is_zero or threshold <= 0:
        return f
    contributions = mode_contributions(f)
    small = contributions < threshold
    if not small.any():
        return f
    if ledger is not None:
        ledger.record(float(np.sum(contributions[small])), "pruned coefficients")
    return f.select(~small)
