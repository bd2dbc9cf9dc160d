"""Frequency vectors ω = (1, α) with certified, refinable components.

Each component of α is a `RealNumber`: something that can hand out a rational
bracket of width at most 2**-bits for any requested number of bits. Presets
cover quadratic surds, Liouville-like series and exact decimals/rationals.
"""

from __future__ import annotations

import logging
import math
import re
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .intervals import RationalInterval

logger = logging.getLogger(__name__)

_VALIDATION_BITS = 64


class RealNumber(ABC):
    """A real number available as rational brackets of any precision."""

    name: str

    def bracket(self, bits: int) -> RationalInterval:
        """Return an interval containing the value with width <= 2**-bits; cached per instance."""
        cache = self.__dict__.setdefault("_brackets", {})
        if bits not in cache:
            cache[bits] = self._bracket(bits)
        return cache[bits]

    @abstractmethod
    def _bracket(self, bits: int) -> RationalInterval: ...

    @property
    def is_exact(self) -> bool:
        return False

    def approx(self) -> float:
        return float(self.bracket(_VALIDATION_BITS).midpoint)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name!r})"


class QuadraticSurd(RealNumber):
    """(a + b*sqrt(d)) / c for integers a, b, c and a positive non-square d."""

    def __init__(self, a: int, b: int, d: int, c: int, name: str | None = None):
        if d <= 0 or c == 0:
            raise ValueError("need d > 0 and c != 0")
        self.a, self.b, self.d, self.c = a, b, d, c
        self.name = name or f"({a}+{b}*sqrt({d}))/{c}"

    @property
    def is_exact(self) -> bool:
        return math.isqrt(self.d) ** 2 == self.d

    def _bracket(self, bits: int) -> RationalInterval:
        # Extra bits absorb the |b/c| magnification of the sqrt bracket.
        work = bits + abs(self.b).bit_length() + 1
        scale = 1 << work
        s = math.isqrt(self.d * scale * scale)
        root = RationalInterval(Fraction(s, scale), Fraction(s + 1, scale))
        if s * s == self.d * scale * scale:
            root = RationalInterval.point(Fraction(s, scale))
        return (root * self.b + self.a) * Fraction(1, self.c)


class LiouvilleNumber(RealNumber):
    """Σ_{m>=1} base**(-m!), irrational with abnormally good rational approximations."""

    def __init__(self, base: int):
        if base < 2:
            raise ValueError("Liouville base must be an integer >= 2")
        self.base = base
        self.name = f"liouville({base})"

    def _bracket(self, bits: int) -> RationalInterval:
        partial = Fraction(0)
        m = 1
        while True:
            partial += Fraction(1, self.base ** math.factorial(m))
            # Tail after term m is at most twice its first term.
            tail = Fraction(2, self.base ** math.factorial(m + 1))
            if tail <= Fraction(1, 1 << bits):
                return RationalInterval(partial, partial + tail)
            m += 1


class ExactRational(RealNumber):
    """A rational component known exactly (decimal presets, rational directions)."""

    def __init__(self, value: Fraction | int | str, name: str | None = None):
        self.value = Fraction(value)
        self.name = name or str(self.value)

    @property
    def is_exact(self) -> bool:
        return True

    def _bracket(self, bits: int) -> RationalInterval:
        return RationalInterval.point(self.value)


@dataclass(frozen=True)
class Frequency:
    """Frequency vector ω = (1, α_1, ..., α_{n-1}) with |α_i| < 1."""

    components: tuple[RealNumber, ...]
    name: str = ""

    def __post_init__(self) -> None:
        if not self.components:
            raise ValueError("a frequency needs at least one component (n >= 2)")
        for component in self.components:
            box = component.bracket(_VALIDATION_BITS)
            if not (-1 < box.lo and box.hi < 1):
                raise ValueError(f"component {component.name} is not certified inside (-1, 1)")
        if not self.name:
            object.__setattr__(self, "name", ",".join(c.name for c in self.components))

    @property
    def dim(self) -> int:
        return len(self.components) + 1

    @property
    def is_exact(self) -> bool:
        return all(c.is_exact for c in self.components)

    def alpha(self, bits: int) -> tuple[RationalInterval, ...]:
        return tuple(c.bracket(bits) for c in self.components)

    def exact_vector(self) -> tuple[Fraction, ...]:
        """ω as exact rationals; only defined for exact components."""
        if not self.is_exact:
            raise ValueError(f"frequency {self.name} has irrational components")
        return (Fraction(1),) + tuple(c.bracket(0).lo for c in self.components)

    def omega(self) -> np.ndarray:
        return np.array([1.0] + [c.approx() for c in self.components])


_SURDS = {
    "sqrt2m1": lambda: QuadraticSurd(-1, 1, 2, 1, name="sqrt2m1"),
    "golden": lambda: QuadraticSurd(-1, 1, 5, 2, name="golden"),
    "sqrt3m1": lambda: QuadraticSurd(-1, 1, 3, 1, name="sqrt3m1"),
}
_LIOUVILLE = re.compile(r"^liouville\((\d+)\)$")


def parse_component(token: str) -> RealNumber:
    """Parse one preset token: a surd name, liouville(b), decimal:<digits> or rational:p/q."""
    token = token.strip()
    if token in _SURDS:
        return _SURDS[token]()
    match = _LIOUVILLE.match(token)
    if match:
        return LiouvilleNumber(int(match.group(1)))
    if token.startswith("decimal:"):
        digits = token.removeprefix("decimal:")
        return ExactRational(Fraction(digits), name=token)
    if token.startswith("rational:"):
        return ExactRational(Fraction(token.removeprefix("rational:")), name=token)
    raise ValueError(f"unknown frequency preset {token!r}")


def frequency_from_preset(spec: str | list[str]) -> Frequency:
    """Build a Frequency from a preset string ("sqrt2m1", "sqrt2m1,golden") or token list."""
    tokens = spec.split(",") if isinstance(spec, str) else list(spec)
    components = tuple(parse_component(token) for token in tokens)
    name = spec if isinstance(spec, str) else ",".join(tokens)
    logger.debug("Resolved frequency %s with n=%d", name, len(components) + 1)
    return Frequency(components, name=name)


def rational_frequency(*alpha: Fraction | int | str) -> Frequency:
    """Frequency (1, α) with exact rational components."""
    return Frequency(tuple(ExactRational(Fraction(a)) for a in alpha))
