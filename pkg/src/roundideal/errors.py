"""Exception types shared across the package."""


class RoundIdealError(Exception):
    """Base class for all errors raised by this package."""


class MalformedInput(RoundIdealError):
    """Structurally bad input: unknown labels, shape mismatches, size caps."""


class ValidationFailure(RoundIdealError):
    """An axiom check failed.  Carries the full violation report."""

    def __init__(self, report):
        self.report = list(report)
        super().__init__("; ".join(self.report))


class PreconditionError(RoundIdealError):
    """A documented hypothesis of an operation does not hold for the input."""


class NotACoverError(PreconditionError):
    """The supplied parts do not join to the element they claim to cover."""


class NoScaleError(PreconditionError):
    """No scale exists between the requested endpoints."""


class InvariantViolation(RoundIdealError):
    """A theorem-backed postcondition failed; indicates an implementation bug."""
