class RduError(Exception):
    """Base for all library errors."""


class ParseError(RduError):
    """Malformed ring spec, element literal, or JSON document."""


class RingMismatchError(RduError):
    """Operands belong to different rings."""


class CapabilityError(RduError):
    """The ring does not support the requested oracle or extraction class."""


class NoWitnessError(CapabilityError):
    """Exhaustive search found no witness (e.g. the unit-perturbation
    property fails for this ring)."""


class NotUnimodularError(RduError):
    """A row that must be unimodular is not."""


class PreconditionError(RduError):
    """Caller-supplied data violates a stated precondition."""


class HypothesisError(RduError):
    """A checkable hypothesis of the selected statement fails for this input."""


class IntegrityError(RduError):
    """An internally guaranteed identity failed; indicates a bug, not bad input."""


class UnsupportedSizeError(RduError):
    """Search is capped at n=3, q in {2, 3}."""
