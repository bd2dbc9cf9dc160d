"""Truncated Lie transforms exp(ad_χ) with a geometric tail estimate."""

from __future__ import annotations

import logging
from typing import NamedTuple

from ..config import get_settings
from ..errors import SeriesDivergence
from ..fourier_taylor import FourierTaylorFunction, NormLedger, majorant_norm, poisson_bracket, prune

logger = logging.getLogger(__name__)


class LieSeries(NamedTuple):
    """Output of `lie_transform`.

    Attributes:
        result: Σ_{m<=m_max} ad_χ^m H / m!.
        tail: Geometric estimate of the omitted orders.
        term_norms: Majorants of the terms for m = 0..m_max+1.
    """

    result: FourierTaylorFunction
    tail: float
    term_norms: tuple[float, ...]


def lie_transform(
    H: FourierTaylorFunction,
    chi: FourierTaylorFunction,
    m_max: int | None = None,
    ledger: NormLedger | None = None,
    prune_floor: float = 0.0,
) -> LieSeries:
    """H∘Φ_χ ≈ Σ_{m=0..m_max} (1/m!) ad_χ^m H with ad_χ F = {F, χ}.

    The order m_max+1 term is computed to estimate the tail as
    N(T_{m_max+1}) / (1 − ratio) with ratio = N(T_{m_max+1}) / N(T_{m_max}).

    Raises:
        SeriesDivergence: successive terms stop shrinking at order m_max.
    """
    m_max = get_settings().lie_order if m_max is None else m_max
    if m_max < 1:
        raise ValueError("Lie order must be >= 1")

    total = H
    term = H
    norms = [majorant_norm(H)]
    if chi.is_zero:
        return LieSeries(H, 0.0, tuple(norms + [0.0] * (m_max + 1)))

    for m in range(1, m_max + 2):
        term = prune(poisson_bracket(term, chi) / m, prune_floor, ledger)
        norms.append(majorant_norm(term))
        if term.is_zero:
            norms.extend([0.0] * (m_max + 1 - m))
            logger.debug("Lie series terminated at order %d", m)
            return LieSeries(total, 0.0, tuple(norms))
        if m <= m_max:
            total = total + term

    last, following = norms[m_max], norms[m_max + 1]
    ratio = following / last if last > 0 else float("inf")
    if ratio >= 1:
        raise SeriesDivergence(f"Lie series term ratio {ratio:.3g} >= 1 at order {m_max}")
    tail = following / (1 - ratio)
    if ledger is not None:
        ledger.record(tail, f"Lie series beyond order {m_max}")
    return LieSeries(total, tail, tuple(norms))
