"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: ``VerificationError`` -> 1,
``ValidationError`` -> 2, ``RegimeError`` -> 3.
"""


class SuperjacError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(SuperjacError, ValueError):
    """Input parameters are malformed."""


class NonPrimeError(ValidationError):
    pass


class MultipleRootsError(ValidationError):
    pass


class DivisibleCofactorError(ValidationError):
    """The cofactor m is divisible by p."""


class DegreeTooSmallError(ValidationError):
    pass


class PreconditionError(ValidationError):
    """An operation was called outside its documented domain."""


class RegimeError(SuperjacError):
    """The family lies outside the parameter regime an operation supports."""


class VerificationError(SuperjacError):
    """A mechanically checked claim turned out false."""


class ConsistencyError(VerificationError):
    """Two independent computations of the same quantity disagree."""


class SymmetryObstruction(VerificationError):
    """A nontrivial multiplier preserves the multiplicity profile."""

    def __init__(self, multipliers):
        self.multipliers = tuple(sorted(multipliers))
        bad = [k for k in self.multipliers if k != 1]
        super().__init__(f"profile is invariant under nontrivial multipliers {bad}")


class InconclusiveError(SuperjacError):
    """A randomized procedure exhausted its trial budget without a verdict."""
