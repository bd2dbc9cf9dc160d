"""Two-frequency stability chain: Dirichlet direction, one-phase normal form, average split."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..diophantine import Frequency, ProfileLike, ResonanceLattice, dirichlet_approximation
from ..errors import ApproximationTooCoarse, DenominatorTooSmall
from ..fourier_taylor import FourierTaylorFunction, linear_hamiltonian, majorant_norm
from .averaging import NormalFormResult, ResonantSplit, normalize, split_resonant_average

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OnePhaseReport:
    K: float
    p: int
    q: int
    approximation_error: float
    eps: float
    normal_form: NormalFormResult
    split: ResonantSplit

    @property
    def remainder_majorant(self) -> float:
        return self.normal_form.remainder_majorant

    @property
    def log_stability_time(self) -> float:
        """log of ε⁻¹ e^{K}, the time scale on which the averaged system governs the actions."""
        return -math.log(self.eps) + self.K


def one_phase_stability_chain(
    freq: Frequency,
    f: FourierTaylorFunction,
    profile: ProfileLike,
    c: float = 1.0,
    steps: int = 6,
) -> OnePhaseReport:
    """Average l_ω + f around the best rational direction v = (1, p/q) with q > K = Δ(c/ε).

    The perturbation is rewritten as f_v = (ω − v)·I + f so that the linear
    part is the resonant l_v, normalized modulo the kernel of v, and the
    resulting resonant part is split into its average and modes with
    |k|_inf >= q.

    Raises:
        DenominatorTooSmall: the Dirichlet denominator does not exceed K.
        ApproximationTooCoarse: |ω − v| exceeds 1/(qΨ(K)).
    """
    if freq.dim != 2:
        raise ValueError("the one-phase chain is defined for n = 2")
    eps = majorant_norm(f)
    if eps <= 0:
        raise ValueError("perturbation must be nonzero")
    K = profile.delta(c / eps)
    Q = profile.psi_at(K)
    conv = dirichlet_approximation(freq, Q)
    if conv.q <= K:
        raise DenominatorTooSmall(f"Dirichlet denominator q={conv.q} does not exceed K={K:.3g}")
    if conv.err.lo * Fraction(Q) > 1:
        raise ApproximationTooCoarse(f"|{conv.q}α − {conv.p}| is not below 1/Ψ(K)=1/{Q:.6g}")
    logger.info("One-phase chain: K=%.4g, v=(1, %d/%d), |qα−p|=%.3e", K, conv.p, conv.q, float(conv.err.hi))

    v = (Fraction(1), Fraction(conv.p, conv.q))
    omega = freq.omega()
    shift = linear_hamiltonian(omega - np.array([float(x) for x in v]), f.window)
    f_v = shift + f
    lattice = ResonanceLattice.kernel_of(v)
    result = normalize(v, f_v, lattice, K, steps)
    split = split_resonant_average(result.g, v, K)
    return OnePhaseReport(
        K=K,
        p=conv.p,
        q=conv.q,
        approximation_error=float(conv.err.hi) / conv.q,
        eps=eps,
        normal_form=result,
        split=split,
    )
