"""Continued-fraction convergents and Dirichlet approximation with certified quotients."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

from ..config import get_settings
from ..errors import PrecisionExhausted
from .frequency import Frequency
from .intervals import HALF, RationalInterval

logger = logging.getLogger(__name__)

_START_BITS = 64


@dataclass(frozen=True)
class Convergent:
    """Rational approximation p/q of a frequency component with err ⊇ |qα − p|."""

    p: int
    q: int
    err: RationalInterval

    def __post_init__(self) -> None:
        if self.q <= 0:
            raise ValueError("convergent denominator must be positive")

    @property
    def value(self) -> Fraction:
        return Fraction(self.p, self.q)


def _approximation_error(alpha: RationalInterval, p: int, q: int) -> RationalInterval:
    return abs(alpha * q - p)


def _partial_quotients(x: RationalInterval, count: int) -> tuple[list[int], bool]:
    """Run the continued-fraction algorithm on both endpoints of x.

    Returns the certified partial quotients and whether the expansion ended
    exactly (x is a rational point whose expansion terminated).
    """
    quotients: list[int] = []
    lo, hi = x.lo, x.hi
    while len(quotients) < count:
        a_lo, a_hi = math.floor(lo), math.floor(hi)
        if a_lo != a_hi:
            return quotients, False
        a = a_lo
        frac_lo, frac_hi = lo - a, hi - a
        if lo == hi and frac_lo == 0:
            quotients.append(a)
            return quotients, True
        if frac_lo == 0 or frac_hi == 0:
            return quotients, False
        quotients.append(a)
        lo, hi = 1 / frac_hi, 1 / frac_lo
    return quotients, False


def convergents(freq: Frequency, component: int, j_max: int) -> list[Convergent]:
    """First j_max convergents p_j/q_j of α_component with strictly increasing q.

    Partial quotients are accepted only when both ends of the component's
    bracket agree on the floor; the bracket is refined until j_max + 1
    quotients are certified.

    Raises:
        PrecisionExhausted: the refinement budget cannot certify enough quotients.
    """
    if j_max < 1:
        raise ValueError("j_max must be >= 1")
    if not 0 <= component < freq.dim - 1:
        raise ValueError(f"component index {component} outside 0..{freq.dim - 2}")

    budget = get_settings().refinement_bits
    real = freq.components[component]
    bits = _START_BITS
    # One spare quotient covers the dropped duplicate leading convergent.
    needed = j_max + 1
    while True:
        alpha = real.bracket(bits)
        quotients, terminated = _partial_quotients(alpha, needed)
        if len(quotients) >= needed or terminated:
            break
        if bits >= budget:
            raise PrecisionExhausted(
                f"only {len(quotients)} partial quotients of {real.name} certified at {bits} bits"
            )
        logger.debug("Refining %s from %d bits for convergents", real.name, bits)
        bits = min(2 * bits, budget)

    result: list[Convergent] = []
    p_prev, p = 1, quotients[0]
    q_prev, q = 0, 1
    result.append(Convergent(p, q, _approximation_error(alpha, p, q)))
    for a in quotients[1:]:
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        conv = Convergent(p, q, _approximation_error(alpha, p, q))
        if result and result[-1].q == q:
            result[-1] = conv
        else:
            result.append(conv)
    return result[:j_max]


def dirichlet_approximation(freq: Frequency, Q: float) -> Convergent:
    """Best p/q with 1 <= q < Q by exhaustive search (n = 2 only).

    Ties in |qα − p| go to the smaller q. Dirichlet's box principle
    guarantees the minimum is at most 1/Q.
    """
    if freq.dim != 2:
        raise ValueError("Dirichlet approximation is defined for n = 2 only")
    if Q <= 1:
        raise ValueError("Q must exceed 1")

    q_max = math.ceil(Q) - 1
    bits = _START_BITS + q_max.bit_length()
    alpha = freq.components[0].bracket(bits)
    best: Convergent | None = None
    best_err = Fraction(2)
    for q in range(1, q_max + 1):
        p = math.floor(alpha.midpoint * q + HALF)
        err = _approximation_error(alpha, p, q)
        if err.midpoint < best_err:
            best, best_err = Convergent(p, q, err), err.midpoint
    assert best is not None
    if best.err.lo > Fraction(1) / Fraction(Q):
        logger.warning("Dirichlet candidate %d/%d misses the 1/Q bound for Q=%s", best.p, best.q, Q)
    return best
