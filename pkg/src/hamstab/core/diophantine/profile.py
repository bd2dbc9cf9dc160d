"""Small-divisor profiles Ψ, Λ(x) = xΨ(x) and the inverse Δ = Λ⁻¹.

Two profile kinds share one protocol (`psi_at`, `lam`, `delta`, `lam_range`):
`SmallDivisorProfile` tabulates Ψ on 1..K_max by certified brute force and
extends it piecewise-linearly; `DiophantineProfile` is the closed form
Ψ(x) = x**τ / γ.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Protocol, runtime_checkable

import numpy as np

from ..config import get_settings
from ..errors import AmbiguousBracket, OutOfRange, ResonanceDetected
from .frequency import Frequency
from .intervals import RationalInterval, dist_to_integers
from .lattice import IntVector, half_space_vectors

logger = logging.getLogger(__name__)

_MAX_BISECTIONS = 200


@runtime_checkable
class ProfileLike(Protocol):
    """Anything that can answer Ψ(x), Λ(x) and Δ(y)."""

    k_max: float

    def psi_at(self, x: float) -> float: ...

    def lam(self, x: float) -> float: ...

    def delta(self, y: float, tol: float | None = None) -> float: ...

    def lam_range(self) -> tuple[float, float]: ...


def _start_bits(K: int) -> int:
    return 64 + K.bit_length() + 8


def _dot(k: IntVector, alpha: tuple[RationalInterval, ...]) -> RationalInterval:
    total = RationalInterval.point(0)
    for ki, ai in zip(k, alpha):
        if ki:
            total = total + ai * ki
    return total


def _min_distance(
    freq: Frequency, vectors: list[IntVector], K: int
) -> tuple[RationalInterval, IntVector]:
    """Certified bracket of min |k·α|_Z over the given vectors, with an argmin.

    The bracket [min lo, min hi] always contains the true minimum; refinement
    continues until it is bounded away from zero and relatively narrow.
    """
    settings = get_settings()
    budget = settings.refinement_bits
    target = Fraction(settings.psi_relative_width)
    bits = min(_start_bits(K), budget)
    while True:
        alpha = freq.alpha(bits)
        lo = hi = None
        argmin: IntVector = vectors[0]
        ambiguous = False
        for k in vectors:
            try:
                d = dist_to_integers(_dot(k, alpha))
            except AmbiguousBracket:
                ambiguous = True
                break
            if hi is None or d.hi < hi:
                hi, argmin = d.hi, k
            if lo is None or d.lo < lo:
                lo = d.lo
        if not ambiguous:
            bracket = RationalInterval(lo, hi)
            if lo > 0 and bracket.width <= target * hi:
                return bracket, argmin
            if lo == 0 and freq.is_exact:
                raise ResonanceDetected(f"k={argmin} is an exact resonance of {freq.name}")
        if bits >= budget:
            if ambiguous or lo == 0:
                raise ResonanceDetected(
                    f"|k·α|_Z for {freq.name} not separated from 0 at {bits} bits (K={K})"
                )
            logger.debug("Ψ bracket for %s at K=%d kept at relative width %.3g", freq.name, K, float(bracket.width / hi))
            return bracket, argmin
        logger.debug("Refining %s to %d bits at K=%d", freq.name, 2 * bits, K)
        bits = min(2 * bits, budget)


def psi(freq: Frequency, K: int) -> RationalInterval:
    """Ψ(K) = max 1/|k·α|_Z over integer k with 0 < |k|_inf <= K, certified.

    Raises:
        ResonanceDetected: some |k·α|_Z cannot be separated from zero within
            the refinement budget.
    """
    if K < 1:
        raise ValueError("K must be >= 1")
    vectors = list(half_space_vectors(freq.dim - 1, K))
    bracket, _ = _min_distance(freq, vectors, K)
    return bracket.reciprocal()


def _psi_rows(freq: Frequency, K_max: int) -> Iterable[tuple[int, RationalInterval, IntVector]]:
    lo = hi = None
    best: IntVector | None = None
    for K in range(1, K_max + 1):
        shell = list(half_space_vectors(freq.dim - 1, K, shell_only=True))
        bracket, argmin = _min_distance(freq, shell, K)
        if hi is None or bracket.hi < hi:
            best = argmin
        lo = bracket.lo if lo is None else min(lo, bracket.lo)
        hi = bracket.hi if hi is None else min(hi, bracket.hi)
        yield K, RationalInterval(lo, hi).reciprocal(), best


@dataclass(frozen=True)
class SmallDivisorProfile:
    """Ψ tabulated on K = 1..K_max with a piecewise-linear continuous extension."""

    frequency: Frequency
    k_max: int
    psi_table: tuple[tuple[int, RationalInterval], ...]
    maximizers: tuple[IntVector, ...] = ()
    _nodes: np.ndarray = field(init=False, repr=False, compare=False)
    _values: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        nodes = np.array([K for K, _ in self.psi_table], dtype=float)
        values = np.array([float(value.midpoint) for _, value in self.psi_table])
        # Midpoints of nested brackets can wobble by rounding; keep Ψ nondecreasing.
        values = np.maximum.accumulate(values)
        object.__setattr__(self, "_nodes", nodes)
        object.__setattr__(self, "_values", values)

    def psi_at(self, x: float) -> float:
        return float(np.interp(x, self._nodes, self._values))

    def lam(self, x: float) -> float:
        return x * self.psi_at(x)

    def lam_range(self) -> tuple[float, float]:
        return self.lam(1.0), self.lam(float(self.k_max))

    def delta(self, y: float, tol: float | None = None) -> float:
        return delta(self, y, tol)

    def rows(self) -> list[dict[str, float | int]]:
        """Export rows {K, psi_lo, psi_hi}."""
        return [
            {"K": K, "psi_lo": float(value.lo), "psi_hi": float(value.hi)}
            for K, value in self.psi_table
        ]


@dataclass(frozen=True)
class DiophantineProfile:
    """Closed-form profile Ψ(x) = x**τ / γ of a (γ, τ)-Diophantine vector."""

    gamma: float
    tau: float
    k_max: float = math.inf

    def __post_init__(self) -> None:
        if self.gamma <= 0 or self.tau < 0:
            raise ValueError("need gamma > 0 and tau >= 0")

    def psi_at(self, x: float) -> float:
        return x**self.tau / self.gamma

    def lam(self, x: float) -> float:
        return x ** (1 + self.tau) / self.gamma

    def lam_range(self) -> tuple[float, float]:
        return 1.0 / self.gamma, math.inf

    def delta(self, y: float, tol: float | None = None) -> float:
        low, _ = self.lam_range()
        if y < low * (1 - 1e-15):
            raise OutOfRange(f"y={y} below Λ(1)={low}")
        return (self.gamma * y) ** (1 / (1 + self.tau))


def build_profile(freq: Frequency, K_max: int) -> SmallDivisorProfile:
    """Tabulate Ψ(1..K_max) incrementally by |k|_inf shells.

    Raises:
        ResonanceDetected: propagated from the certified enumeration.
    """
    if K_max < 1:
        raise ValueError("K_max must be >= 1")
    table: list[tuple[int, RationalInterval]] = []
    maximizers: list[IntVector] = []
    for K, value, best in _psi_rows(freq, K_max):
        table.append((K, value))
        maximizers.append(best)
    logger.info("Built Ψ profile for %s up to K=%d (Ψ(K_max)≈%.6g)", freq.name, K_max, float(table[-1][1].midpoint))
    return SmallDivisorProfile(freq, K_max, tuple(table), tuple(maximizers))


def delta(profile: ProfileLike, y: float, tol: float | None = None) -> float:
    """Δ(y) = Λ⁻¹(y) by monotone bisection on [1, K_max].

    Raises:
        OutOfRange: y lies outside [Λ(1), Λ(K_max)]; grow K_max.
    """
    tol = get_settings().delta_tolerance if tol is None else tol
    low, high = profile.lam_range()
    if not (low * (1 - tol) <= y <= high * (1 + tol)):
        raise OutOfRange(f"y={y:.6g} outside [Λ(1), Λ(K_max)] = [{low:.6g}, {high:.6g}]")
    if abs(y - low) <= tol * y:
        return 1.0
    if abs(y - high) <= tol * y:
        return float(profile.k_max)

    a, b = 1.0, float(profile.k_max)
    x = 0.5 * (a + b)
    for _ in range(_MAX_BISECTIONS):
        x = 0.5 * (a + b)
        value = profile.lam(x)
        if abs(value - y) <= tol * y:
            return x
        if value < y:
            a = x
        else:
            b = x
        if b - a <= 4 * np.finfo(float).eps * b:
            break
    return x


def diophantine_profile(gamma: float, tau: float) -> DiophantineProfile:
    return DiophantineProfile(gamma, tau)


def diophantine_constant(profile: SmallDivisorProfile, tau: float) -> float:
    """Largest γ with Ψ(K) <= K**τ / γ on the tabulated range (certified from Ψ's upper end)."""
    return min(K**tau / float(value.hi) for K, value in profile.psi_table)
