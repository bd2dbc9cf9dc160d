"""Named failures raised by the computational core.

Plain precondition violations on arguments raise `ValueError`; everything a
computation can legitimately run into is a `ComputationError` subclass so the
CLI can map it to its own exit code.
"""


class HamstabError(Exception):
    """Base class for all package errors."""


class ComputationError(HamstabError):
    """A computation could not be completed with the given inputs."""


# diophantine
class AmbiguousBracket(ComputationError):
    """An interval is too wide to locate its nearest integer."""


class ResonanceDetected(ComputationError):
    """A small divisor could not be separated from zero within the refinement budget."""


class OutOfRange(ComputationError):
    """A value lies outside the tabulated range of a profile."""


class PrecisionExhausted(ComputationError):
    """Interval refinement ran out of bits before certifying a result."""


class BudgetExceeded(ComputationError):
    """An enumeration or stepping loop would exceed its configured budget."""


class UnsupportedLattice(ComputationError):
    """Lattice membership requested for a lattice kind that is not supported."""


# normal_form
class SmallDivisorBreach(ComputationError):
    """A divisor k·w fell below the configured floor."""


class SeriesDivergence(ComputationError):
    """Successive Lie-series terms stopped contracting."""


class StepBudget(ComputationError):
    """The non-resonant part failed to contract between averaging steps."""


class DenominatorTooSmall(ComputationError):
    """The rational direction's denominator does not exceed the cutoff K."""


class ApproximationTooCoarse(ComputationError):
    """The rational direction is farther from ω than 1/(qΨ(K))."""


# dynamics
class NotResonant(ComputationError):
    """The mode vector is not orthogonal to the frequency."""


class NotSeparable(ComputationError):
    """The Hamiltonian couples angles and actions in the same mode."""


# constructions
class NonResonant(ComputationError):
    """No integer relation exists for the requested frequency."""


class NormBudgetExceeded(ComputationError):
    """A perturbation half exceeds its share of the norm budget."""


class DeltaOutOfWindow(ComputationError):
    """The drift size lies outside the window where the stability bound applies."""


class ProfileRangeExceeded(ComputationError):
    """The profile is too short for the requested perturbation size."""
