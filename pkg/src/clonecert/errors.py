"""Exception types raised by the library.

Everything derives from ValueError so callers that only care about "bad
input" can catch that; the subclasses exist for precise handling in the CLI
and in tests.
"""


class CloneCertError(ValueError):
    """Base class for all library errors."""


class ParameterError(CloneCertError):
    """Construction parameters outside the valid region."""


class LayoutError(CloneCertError):
    """Invalid subsystem layout, label, or bipartition."""


class NonHermitianError(CloneCertError):
    """Operator fails the Hermiticity check."""


class LinearDependenceError(CloneCertError):
    """Gram-Schmidt input is linearly dependent below the tolerance."""


class ChainError(CloneCertError):
    """State set does not admit the requested chain (PNO or reducible)."""


class WitnessError(CloneCertError):
    """An analytic witness assertion failed."""


class WitnessFormError(WitnessError):
    """Witness input does not have the required algebraic form."""


class FormatError(CloneCertError):
    """Malformed serialized artifact (state-set file, instance, certificate)."""
