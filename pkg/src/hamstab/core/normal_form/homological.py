"""Smallness gate and the first-order homological equation."""

from __future__ import annotations

import numpy as np

from ..config import get_settings
from ..diophantine.lattice import ResonanceLattice
from ..errors import SmallDivisorBreach
from ..fourier_taylor import FourierTaylorFunction
from ..fourier_taylor.series import TWO_PI_I


def check_smallness(K: float, lam: float, eps: float, c0: float | None = None) -> bool:
    """K·ε / (λ·c0) < 1, the quantitative smallness needed by the averaging steps."""
    c0 = get_settings().smallness_c0 if c0 is None else c0
    if min(K, lam, c0) <= 0 or eps < 0:
        raise ValueError("K, lambda and c0 must be positive and eps nonnegative")
    if eps == 0:
        return True
    return K * eps / (lam * c0) < 1


def solve_homological(
    f_nr: FourierTaylorFunction,
    w: np.ndarray,
    lattice: ResonanceLattice,
    K: float,
    floor: float | None = None,
) -> FourierTaylorFunction:
    """Generator χ with χ̂_k = f̂_k / (2πi k·w), so that {l_w, χ} + f_nr = 0.

    Every mode of f_nr must lie outside the lattice with 0 < |k|_inf <= K.

    Raises:
        ValueError: a mode is resonant or beyond K.
        SmallDivisorBreach: some |k·w| is below the configured divisor floor.
    """
    floor = get_settings().small_divisor_floor if floor is None else floor
    if f_nr.is_zero:
        return f_nr
    w = np.asarray(w, dtype=float)
    if lattice.contains_many(f_nr.keys).any():
        raise ValueError("homological equation received a lattice-resonant mode")
    if (f_nr.sup_orders > K).any():
        raise ValueError(f"homological equation received a mode beyond |k|={K:g}")

    divisors = f_nr.keys @ w
    worst = int(np.argmin(np.abs(divisors)))
    if abs(divisors[worst]) < floor:
        k = tuple(int(x) for x in f_nr.keys[worst])
        raise SmallDivisorBreach(f"|k·w| = {abs(divisors[worst]):.3e} below floor {floor:g} at k={k}")

    scale = 1.0 / (TWO_PI_I * divisors)
    return FourierTaylorFunction(
        f_nr.window, f_nr.keys, f_nr.a * scale, f_nr.b * scale[:, None], f_nr.real
    )
