"""The optimal-instability family built from continued-fraction convergents.

Member j approximates ω = (1, α) by the resonant v_j = (1, p_j/q_j, α_2, ...)
and perturbs it by

    f_j¹(I) = (v_j − ω)·I,    f_j²(θ) = −ε_j μ_j sin(2π k_j·θ),

with k_j = (p_j, −q_j, 0, ...), ε_j = c / (q_j Ψ(q_j)) and
μ_j = e^{−w_j} / (2π q_j), w_j = 2πσ|k_j|₁. Along the resonant flow the
actions drift at the exact rate ε_j e^{−w_j}.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from ..diophantine import (
    Convergent,
    Frequency,
    ProfileLike,
    SmallDivisorProfile,
    convergents,
    exact_dot,
    l1_norm,
    psi,
)
from ..dynamics import State, exact_flow_single_resonance
from ..errors import NormBudgetExceeded, NotResonant
from ..fourier_taylor import AnalyticityWindow, FourierTaylorFunction, linear_hamiltonian, majorant_norm, sine

logger = logging.getLogger(__name__)

_C_MARGIN = 1 + 1e-9
_COMPONENT_BITS = 96


@dataclass(frozen=True, eq=False)
class InstabilityMember:
    """Member j of the instability family and its closed-form drift law."""

    j: int
    p: int
    q: int
    v: tuple[Fraction, ...]
    k: tuple[int, ...]
    eps: float
    mu: float
    psi_q: float
    window: AnalyticityWindow
    omega: np.ndarray
    f1: FourierTaylorFunction
    f2: FourierTaylorFunction

    @property
    def f(self) -> FourierTaylorFunction:
        return self.f1 + self.f2

    @property
    def exponent(self) -> float:
        """w_j = 2πσ|k_j|₁."""
        return 2 * math.pi * self.window.sigma * l1_norm(self.k)

    @property
    def amplitude(self) -> float:
        """A = ε_j μ_j, the sine amplitude of f_j²."""
        return self.eps * self.mu

    @property
    def predicted_log_rate(self) -> float:
        return math.log(self.eps) - self.exponent

    @property
    def hamiltonian(self) -> FourierTaylorFunction:
        """l_ω + f_j, which equals l_{v_j} + f_j² and is separable."""
        return linear_hamiltonian(self.omega, self.window) + self.f

    @property
    def start(self) -> State:
        """Drift-maximizing initial state k_j·θ₀ = 0."""
        return State(np.zeros(self.window.n), np.zeros(self.window.n))

    def flow(self, t: float, z0: State | None = None) -> State:
        return exact_flow_single_resonance(self.v, self.k, self.amplitude, 0.0, z0 or self.start, t)


def predicted_drift(member: InstabilityMember, t: float) -> float:
    """|t| ε_j e^{−w_j}."""
    return abs(t) * math.exp(member.predicted_log_rate) if t else 0.0


def predicted_log_drift(member: InstabilityMember, t: float) -> float:
    return math.log(abs(t)) + member.predicted_log_rate if t else -math.inf


def passage_time(member: InstabilityMember, delta: float) -> float:
    """Closed-form time at which the drift reaches δ (log-space: see `log_passage_time`)."""
    return math.exp(log_passage_time(member, delta))


def log_passage_time(member: InstabilityMember, delta: float) -> float:
    return math.log(delta) - member.predicted_log_rate


def _psi_value(freq: Frequency, q: int, profile: ProfileLike | None) -> float:
    if isinstance(profile, SmallDivisorProfile) and q <= profile.k_max:
        return float(profile.psi_table[q - 1][1].midpoint)
    return float(psi(freq, q).midpoint)


def _rational_tail(freq: Frequency) -> tuple[Fraction, ...]:
    return tuple(b.midpoint for b in freq.alpha(_COMPONENT_BITS)[1:])


def minimal_norm_constant(
    freq: Frequency, window: AnalyticityWindow, indices: Iterable[int], profile: ProfileLike | None = None
) -> float:
    """Smallest c for which every requested member passes the norm budget, with a tiny margin.

    The action-shift half needs (R+σ)|α₁ − p/q| <= ε_j/2, i.e.
    c >= 2(R+σ)|qα₁ − p|Ψ(q).
    """
    indices = sorted(set(indices))
    if not indices:
        return 2 * window.action_radius * _C_MARGIN
    convs = convergents(freq, 0, indices[-1] + 1)
    needed = 0.0
    for j in indices:
        conv = convs[j]
        needed = max(needed, 2 * window.action_radius * float(conv.err.hi) * _psi_value(freq, conv.q, profile))
    return needed * _C_MARGIN


def instability_family_member(
    freq: Frequency,
    window: AnalyticityWindow,
    j: int,
    c: float,
    profile: ProfileLike | None = None,
    check_norms: bool = True,
    convergent: Convergent | None = None,
) -> InstabilityMember:
    """Member j (0-based index into the strictly increasing convergents of α₁).

    Raises:
        NormBudgetExceeded: with `check_norms`, one half of f_j has majorant
            above ε_j/2 (c too small for the action shift).
    """
    if window.n != freq.dim:
        raise ValueError(f"window dimension {window.n} differs from frequency dimension {freq.dim}")
    if j < 0 or c <= 0:
        raise ValueError("need j >= 0 and c > 0")
    conv = convergent or convergents(freq, 0, j + 1)[j]
    p, q = conv.p, conv.q
    psi_q = _psi_value(freq, q, profile)
    eps = c / (q * psi_q)

    v = (Fraction(1), Fraction(p, q)) + _rational_tail(freq)
    k = (p, -q) + (0,) * (freq.dim - 2)
    if exact_dot(k, v) != 0:
        raise NotResonant(f"k={k} is not orthogonal to v={tuple(str(x) for x in v)}")

    sigma = window.sigma
    exponent = 2 * math.pi * sigma * l1_norm(k)
    mu = math.exp(-exponent) / (2 * math.pi * q)
    omega = freq.omega()
    v_float = np.array([float(x) for x in v])
    f1 = linear_hamiltonian(v_float - omega, window)
    f2 = -sine(window, k, eps * mu)

    if check_norms:
        for name, half in (("action shift", f1), ("potential", f2)):
            norm = majorant_norm(half)
            if norm > eps / 2:
                raise NormBudgetExceeded(
                    f"member j={j}: {name} majorant {norm:.6g} exceeds eps_j/2 = {eps / 2:.6g} (c={c:g})"
                )
    logger.info("Constructed member j=%d: p/q=%d/%d, eps=%.6g, log rate=%.6g", j, p, q, eps, math.log(eps) - exponent)
    return InstabilityMember(j, p, q, v, k, eps, mu, psi_q, window, omega, f1, f2)


def default_c(freq: Frequency, window: AnalyticityWindow, indices: Iterable[int]) -> float:
    c = minimal_norm_constant(freq, window, indices)
    logger.info("Default c=%.12g (smallest passing the norm budget)", c)
    return c
