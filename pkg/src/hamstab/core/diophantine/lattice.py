"""Integer vectors: enumeration, integer relations and resonance lattices."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from ..config import get_settings
from ..errors import BudgetExceeded, UnsupportedLattice

IntVector = tuple[int, ...]


def sup_norm(k: Sequence[int]) -> int:
    return max((abs(x) for x in k), default=0)


def l1_norm(k: Sequence[int]) -> int:
    return sum(abs(x) for x in k)


def exact_dot(k: Sequence[int], v: Sequence[Fraction | int]) -> Fraction:
    return sum((Fraction(ki) * Fraction(vi) for ki, vi in zip(k, v)), Fraction(0))


def is_half_representative(k: Sequence[int]) -> bool:
    """True when the first nonzero entry is positive (one vector of each ±k pair)."""
    for x in k:
        if x:
            return x > 0
    return False


def half_space_vectors(dim: int, K: int, shell_only: bool = False) -> Iterator[IntVector]:
    """Integer vectors with 0 < |k|_inf <= K, one per ±k pair, in lexicographic order.

    With `shell_only` only vectors with |k|_inf == K are produced.
    """
    for k in itertools.product(range(-K, K + 1), repeat=dim):
        if not is_half_representative(k):
            continue
        if shell_only and sup_norm(k) != K:
            continue
        yield k


def half_space_count(dim: int, K: int) -> int:
    return ((2 * K + 1) ** dim - 1) // 2


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with x*a + y*b = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a - (a // b) * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _normalize_sign(k: IntVector) -> IntVector:
    return k if is_half_representative(k) else tuple(-x for x in k)


def integer_kernel_basis(v: Sequence[Fraction | int]) -> list[IntVector]:
    """Basis of {k in Z^n : k·v = 0} by successive extended-gcd column elimination.

    The denominators of v are cleared to an integer row a; unimodular column
    operations bring a to (g, 0, ..., 0) and the last n-1 columns of the
    accumulated transform span the kernel.
    """
    v = [Fraction(x) for x in v]
    if not any(v):
        raise ValueError("kernel of the zero vector is the whole lattice")
    scale = math.lcm(*(x.denominator for x in v))
    a = [int(x * scale) for x in v]
    n = len(a)
    # columns[j] is the j-th column of the unimodular transform U
    columns = [[int(i == j) for i in range(n)] for j in range(n)]

    if a[0] == 0:
        pivot = next(i for i, x in enumerate(a) if x)
        a[0], a[pivot] = a[pivot], a[0]
        columns[0], columns[pivot] = columns[pivot], columns[0]

    for i in range(1, n):
        if a[i] == 0:
            continue
        g, x, y = _egcd(a[0], a[i])
        c0, ci = columns[0], columns[i]
        u, w = a[i] // g, a[0] // g
        columns[0] = [x * p + y * q for p, q in zip(c0, ci)]
        columns[i] = [u * p - w * q for p, q in zip(c0, ci)]
        a[0], a[i] = g, 0

    return [_normalize_sign(tuple(col)) for col in columns[1:]]


def find_resonance(v: Sequence[Fraction | int]) -> IntVector | None:
    """Primitive integer vector k != 0 with k·v = 0, or None when none exists.

    For exact rational input the kernel is trivial only in dimension one; in
    higher dimension the shortest (sup-norm) vector of the elimination basis
    is returned with its first nonzero entry positive.
    """
    basis = integer_kernel_basis(v)
    if not basis:
        return None
    k = min(basis, key=lambda b: (sup_norm(b), b))
    g = math.gcd(*k)
    return tuple(x // g for x in k)


def _rank(vectors: Sequence[Sequence[int]]) -> int:
    rows = [[Fraction(x) for x in vec] for vec in vectors]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for c in range(cols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][c] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][c] != 0:
                factor = rows[r][c] / rows[rank][c]
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


@dataclass(frozen=True)
class ResonanceLattice:
    """Sub-lattice of Z^n: either {0} or the kernel lattice of a rational direction."""

    dim: int
    generators: tuple[IntVector, ...] = ()
    direction: tuple[Fraction, ...] | None = None

    def __post_init__(self) -> None:
        if self.generators and _rank(self.generators) != len(self.generators):
            raise ValueError("lattice generators are not linearly independent")
        if self.generators and self.direction is None:
            raise UnsupportedLattice(
                "only the trivial lattice and kernel lattices of rational directions are supported"
            )

    @classmethod
    def trivial(cls, dim: int) -> ResonanceLattice:
        return cls(dim=dim)

    @classmethod
    def kernel_of(cls, v: Sequence[Fraction | int | str]) -> ResonanceLattice:
        direction = tuple(Fraction(x) for x in v)
        return cls(dim=len(direction), generators=tuple(integer_kernel_basis(direction)), direction=direction)

    def contains(self, k: Sequence[int]) -> bool:
        if self.direction is None:
            return not any(k)
        return exact_dot(k, self.direction) == 0

    def contains_many(self, keys: np.ndarray) -> np.ndarray:
        """Boolean membership mask for an (m, n) integer array of modes."""
        keys = np.asarray(keys)
        if self.direction is None:
            return ~keys.any(axis=1)
        scale = math.lcm(*(x.denominator for x in self.direction))
        row = np.array([int(x * scale) for x in self.direction], dtype=object)
        return np.asarray(keys.astype(object) @ row == 0, dtype=bool)


class NonresonanceCheck(NamedTuple):
    """Outcome of a (λ, K)-non-resonance test; `witness` is the worst violating mode."""

    ok: bool
    witness: IntVector | None
    min_divisor: float


def is_nonresonant_mod_lattice(
    w: Sequence[float | Fraction],
    lattice: ResonanceLattice,
    lam: float,
    K: float,
    budget: int | None = None,
) -> NonresonanceCheck:
    """Check |k·w| >= λ for every k outside the lattice with 0 < |k|_inf <= K.

    Raises:
        ValueError: `w` and the lattice live in different dimensions.
        BudgetExceeded: the enumeration would visit more vectors than `budget`.
    """
    if len(w) != lattice.dim:
        raise ValueError(f"frequency of dimension {len(w)} against a lattice in Z^{lattice.dim}")
    budget = budget if budget is not None else get_settings().enumeration_budget
    K_int = math.floor(K)
    dim = len(w)
    count = half_space_count(dim, K_int)
    if count > budget:
        raise BudgetExceeded(f"{count} modes to enumerate exceeds the budget {budget}")

    exact = all(isinstance(x, (int, Fraction)) for x in w)
    worst_k: IntVector | None = None
    worst = math.inf
    for k in half_space_vectors(dim, K_int):
        if lattice.contains(k):
            continue
        divisor = abs(exact_dot(k, w)) if exact else abs(sum(ki * float(wi) for ki, wi in zip(k, w)))
        if divisor < worst:
            worst, worst_k = divisor, k
    worst = float(worst)
    if worst_k is None or worst >= lam:
        return NonresonanceCheck(True, None, worst)
    return NonresonanceCheck(False, worst_k, worst)
