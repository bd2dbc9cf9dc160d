"""Arithmetic of frequency vectors: Ψ, Λ, Δ, convergents and resonance lattices."""

from .convergents import Convergent, convergents, dirichlet_approximation
from .frequency import (
    ExactRational,
    Frequency,
    LiouvilleNumber,
    QuadraticSurd,
    RealNumber,
    frequency_from_preset,
    rational_frequency,
)
from .intervals import RationalInterval, as_interval, dist_to_integers
from .lattice import (
    NonresonanceCheck,
    ResonanceLattice,
    exact_dot,
    find_resonance,
    half_space_vectors,
    integer_kernel_basis,
    is_nonresonant_mod_lattice,
    l1_norm,
    sup_norm,
)
from .profile import (
    DiophantineProfile,
    ProfileLike,
    SmallDivisorProfile,
    build_profile,
    delta,
    diophantine_constant,
    diophantine_profile,
    psi,
)

__all__ = [
    "Convergent",
    "DiophantineProfile",
    "ExactRational",
    "Frequency",
    "LiouvilleNumber",
    "NonresonanceCheck",
    "ProfileLike",
    "QuadraticSurd",
    "RationalInterval",
    "RealNumber",
    "ResonanceLattice",
    "SmallDivisorProfile",
    "as_interval",
    "build_profile",
    "convergents",
    "delta",
    "diophantine_constant",
    "diophantine_profile",
    "dirichlet_approximation",
    "dist_to_integers",
    "exact_dot",
    "find_resonance",
    "frequency_from_preset",
    "half_space_vectors",
    "integer_kernel_basis",
    "is_nonresonant_mod_lattice",
    "l1_norm",
    "psi",
    "rational_frequency",
    "sup_norm",
]
