"""Finite Fourier sums with coefficients affine in the actions.

A `FourierTaylorFunction` represents

    f(θ, I) = Σ_k (a_k + b_k·I) exp(2πi k·θ)

over a finite set of integer modes k. Modes are stored as one integer array
`keys` of shape (m, n) sorted lexicographically, with the scalar parts `a`
(shape (m,)) and action parts `b` (shape (m, n)) aligned to it. Exact zero
modes are never stored.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

import numpy as np

from .window import AnalyticityWindow

TWO_PI_I = 2j * np.pi


def _freeze(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


def _canonical(
    keys: np.ndarray, a: np.ndarray, b: np.ndarray, n: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Merge duplicate modes, sort lexicographically and drop exact zeros."""
    keys = np.asarray(keys, dtype=np.int64).reshape(-1, n)
    a = np.asarray(a, dtype=complex).reshape(-1)
    b = np.asarray(b, dtype=complex).reshape(-1, n)
    if keys.shape[0] == 0:
        return np.zeros((0, n), dtype=np.int64), np.zeros(0, dtype=complex), np.zeros((0, n), dtype=complex)

    unique, inverse = np.unique(keys, axis=0, return_inverse=True)
    inverse = inverse.reshape(-1)
    a_sum = np.zeros(unique.shape[0], dtype=complex)
    b_sum = np.zeros((unique.shape[0], n), dtype=complex)
    np.add.at(a_sum, inverse, a)
    np.add.at(b_sum, inverse, b)

    keep = (a_sum != 0) | (b_sum != 0).any(axis=1)
    return unique[keep], a_sum[keep], b_sum[keep]


@dataclass(frozen=True, eq=False)
class FourierTaylorFunction:
    """Immutable sparse trigonometric polynomial with affine-in-I coefficients."""

    window: AnalyticityWindow
    keys: np.ndarray
    a: np.ndarray
    b: np.ndarray
    real: bool = True

    def __post_init__(self) -> None:
        keys, a, b = _canonical(self.keys, self.a, self.b, self.window.n)
        object.__setattr__(self, "keys", _freeze(keys))
        object.__setattr__(self, "a", _freeze(a))
        object.__setattr__(self, "b", _freeze(b))

    # -- construction -----------------------------------------------------

    @classmethod
    def zero(cls, window: AnalyticityWindow) -> FourierTaylorFunction:
        n = window.n
        return cls(window, np.zeros((0, n), dtype=np.int64), np.zeros(0), np.zeros((0, n)))

    @classmethod
    def from_modes(
        cls,
        window: AnalyticityWindow,
        modes: Mapping[Sequence[int], tuple[complex, Sequence[complex] | None]],
        real: bool = True,
    ) -> FourierTaylorFunction:
        """Build from {k: (a_k, b_k)}; b_k may be None for a pure-angle mode."""
        n = window.n
        keys, a, b = [], [], []
        for k, (a_k, b_k) in modes.items():
            if len(k) != n:
                raise ValueError(f"mode {tuple(k)} does not have dimension {n}")
            keys.append(tuple(k))
            a.append(a_k)
            b.append(np.zeros(n) if b_k is None else np.asarray(b_k, dtype=complex))
        if not keys:
            return cls.zero(window)
        return cls(window, np.array(keys), np.array(a, dtype=complex), np.array(b), real=real)

    # -- inspection -------------------------------------------------------

    @property
    def n(self) -> int:
        return self.window.n

    @property
    def size(self) -> int:
        return int(self.keys.shape[0])

    @property
    def is_zero(self) -> bool:
        return self.size == 0

    @property
    def sup_orders(self) -> np.ndarray:
        return np.abs(self.keys).max(axis=1) if self.size else np.zeros(0, dtype=np.int64)

    @property
    def l1_orders(self) -> np.ndarray:
        return np.abs(self.keys).sum(axis=1)

    @property
    def is_affine(self) -> bool:
        """Structural closure check: coefficient arrays have exactly the affine shape."""
        return self.a.shape == (self.size,) and self.b.shape == (self.size, self.n)

    @property
    def depends_on_actions(self) -> bool:
        return bool((self.b != 0).any())

    def modes(self) -> Iterator[tuple[tuple[int, ...], complex, np.ndarray]]:
        for k, a_k, b_k in zip(self.keys, self.a, self.b):
            yield tuple(int(x) for x in k), complex(a_k), b_k

    def coefficient(self, k: Sequence[int]) -> tuple[complex, np.ndarray]:
        """(a_k, b_k) for mode k, zeros when the mode is absent."""
        match = np.flatnonzero((self.keys == np.asarray(k)).all(axis=1))
        if match.size == 0:
            return 0j, np.zeros(self.n, dtype=complex)
        i = match[0]
        return complex(self.a[i]), self.b[i].copy()

    def select(self, mask: np.ndarray) -> FourierTaylorFunction:
        return FourierTaylorFunction(self.window, self.keys[mask], self.a[mask], self.b[mask], self.real)

    def at_window(self, window: AnalyticityWindow) -> FourierTaylorFunction:
        if window.n != self.n:
            raise ValueError("window dimension mismatch")
        return FourierTaylorFunction(window, self.keys, self.a, self.b, self.real)

    def reality_defect(self) -> float:
        """max |c_{-k} - conj(c_k)| over stored modes; zero for a real function."""
        if self.is_zero:
            return 0.0
        mirrored = FourierTaylorFunction(self.window, -self.keys, np.conj(self.a), np.conj(self.b), self.real)
        diff = self - mirrored
        return float(max(np.abs(diff.a).max(initial=0.0), np.abs(diff.b).max(initial=0.0)))

    # -- algebra ----------------------------------------------------------

    def _check_compatible(self, other: FourierTaylorFunction) -> None:
        if other.n != self.n:
            raise ValueError("cannot combine functions of different dimension")

    def __add__(self, other: FourierTaylorFunction) -> FourierTaylorFunction:
        if not isinstance(other, FourierTaylorFunction):
            return NotImplemented
        self._check_compatible(other)
        return FourierTaylorFunction(
            self.window,
            np.concatenate([self.keys, other.keys]),
            np.concatenate([self.a, other.a]),
            np.concatenate([self.b, other.b]),
            self.real and other.real,
        )

    def __neg__(self) -> FourierTaylorFunction:
        return FourierTaylorFunction(self.window, self.keys, -self.a, -self.b, self.real)

    def __sub__(self, other: FourierTaylorFunction) -> FourierTaylorFunction:
        if not isinstance(other, FourierTaylorFunction):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar: complex) -> FourierTaylorFunction:
        if isinstance(scalar, FourierTaylorFunction):
            return NotImplemented
        real = self.real and complex(scalar).imag == 0
        return FourierTaylorFunction(self.window, self.keys, self.a * scalar, self.b * scalar, real)

    __rmul__ = __mul__

    def __truediv__(self, scalar: complex) -> FourierTaylorFunction:
        return self * (1 / scalar)

    def times_action(self, i: int) -> FourierTaylorFunction:
        """I_i · f for a function with no action dependence."""
        if self.depends_on_actions:
            raise ValueError("product would be quadratic in the actions")
        b = np.zeros((self.size, self.n), dtype=complex)
        b[:, i] = self.a
        return FourierTaylorFunction(self.window, self.keys, np.zeros(self.size), b, self.real)

    # -- calculus ---------------------------------------------------------

    def evaluate(self, theta: np.ndarray, I: np.ndarray) -> complex | np.ndarray:
        """Σ_k (a_k + b_k·I) e^{2πi k·θ}; theta and I may carry leading batch axes."""
        theta = np.asarray(theta)
        I = np.asarray(I)
        if self.is_zero:
            return np.zeros(np.broadcast_shapes(theta.shape[:-1], I.shape[:-1]), dtype=complex)[()]
        phase = np.exp(TWO_PI_I * (theta @ self.keys.T))
        coefficient = self.a + I @ self.b.T
        return np.sum(coefficient * phase, axis=-1)[()]

    def angle_gradient(self, theta: np.ndarray, I: np.ndarray) -> np.ndarray:
        """∂f/∂θ at (θ, I)."""
        theta = np.asarray(theta)
        phase = np.exp(TWO_PI_I * (theta @ self.keys.T))
        coefficient = (self.a + np.asarray(I) @ self.b.T) * phase
        return (coefficient * TWO_PI_I) @ self.keys

    def action_gradient(self, theta: np.ndarray) -> np.ndarray:
        """∂f/∂I at θ (independent of I in the affine class)."""
        phase = np.exp(TWO_PI_I * (np.asarray(theta) @ self.keys.T))
        return phase @ self.b

    def __repr__(self) -> str:
        return f"FourierTaylorFunction(n={self.n}, modes={self.size}, sigma={self.window.sigma})"


def poisson_bracket(f: FourierTaylorFunction, g: FourierTaylorFunction) -> FourierTaylorFunction:
    """{f, g} = Σ_i (∂f/∂θ_i ∂g/∂I_i − ∂f/∂I_i ∂g/∂θ_i), exact on the affine class.

    For modes k of f and l of g the product lands on k + l with

        scalar part  2πi [(k·b'_l) a_k − (l·b_k) a'_l]
        action part  2πi [(k·b'_l) b_k − (l·b_k) b'_l]

    so the result is again affine in I.
    """
    if f.n != g.n:
        raise ValueError("cannot bracket functions of different dimension")
    if f.is_zero or g.is_zero or not (f.depends_on_actions or g.depends_on_actions):
        return FourierTaylorFunction.zero(f.window)

    k_dot_bg = f.keys @ g.b.T  # (m, m'): k · b'_l
    l_dot_bf = f.b @ g.keys.T  # (m, m'): l · b_k
    scalar = TWO_PI_I * (k_dot_bg * f.a[:, None] - l_dot_bf * g.a[None, :])
    action = TWO_PI_I * (k_dot_bg[:, :, None] * f.b[:, None, :] - l_dot_bf[:, :, None] * g.b[None, :, :])
    keys = f.keys[:, None, :] + g.keys[None, :, :]
    n = f.n
    return FourierTaylorFunction(
        f.window, keys.reshape(-1, n), scalar.reshape(-1), action.reshape(-1, n), f.real and g.real
    )


# -- constructors ----------------------------------------------------------


def constant(window: AnalyticityWindow, value: float) -> FourierTaylorFunction:
    return FourierTaylorFunction.from_modes(window, {(0,) * window.n: (value, None)})


def action(window: AnalyticityWindow, i: int, coefficient: float = 1.0) -> FourierTaylorFunction:
    """The function coefficient · I_i."""
    b = np.zeros(window.n)
    b[i] = coefficient
    return FourierTaylorFunction.from_modes(window, {(0,) * window.n: (0.0, b)})


def linear_hamiltonian(w: Sequence[float], window: AnalyticityWindow) -> FourierTaylorFunction:
    """l_w(I) = w·I."""
    w = np.asarray([float(x) for x in w])
    if w.shape != (window.n,):
        raise ValueError(f"frequency has {w.size} components, window expects {window.n}")
    return FourierTaylorFunction.from_modes(window, {(0,) * window.n: (0.0, w)})


def cosine(window: AnalyticityWindow, k: Sequence[int], amplitude: float = 1.0) -> FourierTaylorFunction:
    """amplitude · cos(2π k·θ)."""
    k = tuple(int(x) for x in k)
    if not any(k):
        return constant(window, amplitude)
    minus = tuple(-x for x in k)
    return FourierTaylorFunction.from_modes(window, {k: (amplitude / 2, None), minus: (amplitude / 2, None)})


def sine(window: AnalyticityWindow, k: Sequence[int], amplitude: float = 1.0) -> FourierTaylorFunction:
    """amplitude · sin(2π k·θ)."""
    k = tuple(int(x) for x in k)
    if not any(k):
        return FourierTaylorFunction.zero(window)
    minus = tuple(-x for x in k)
    return FourierTaylorFunction.from_modes(
        window, {k: (-0.5j * amplitude, None), minus: (0.5j * amplitude, None)}
    )
