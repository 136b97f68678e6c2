"""Exception hierarchy shared by all tamesign modules."""


class TamesignError(Exception):
    """Base class for all library errors."""


class FieldMismatch(TamesignError):
    pass


class ZeroInversion(TamesignError):
    pass


class ZeroInput(TamesignError):
    pass


class NotNormOne(TamesignError):
    pass


class NotQuadratic(TamesignError):
    pass


class TooLarge(TamesignError):
    pass


class UnknownIndex(TamesignError):
    pass


class UnknownRoot(TamesignError):
    pass


class ParseError(TamesignError):
    pass


class ValidationError(TamesignError):
    """A scenario document violates a named structural invariant.

    ``invariant`` is a stable machine-readable identifier; the message adds
    human-readable detail.
    """

    def __init__(self, invariant, detail=""):
        self.invariant = invariant
        msg = invariant if not detail else "%s: %s" % (invariant, detail)
        super().__init__(msg)


class BadPartition(TamesignError):
    pass


class FixedPointUnderNegation(TamesignError):
    pass


class ContextMissing(TamesignError):
    pass


class IsotropicVector(TamesignError):
    pass


class NotAnIsometry(TamesignError):
    pass


class InvariantViolation(TamesignError):
    pass


class NotSigmaStable(TamesignError):
    pass


class NotRamifiedSymmetric(TamesignError):
    pass


class WrongSymmetryClass(TamesignError):
    pass


class ResiduallySingular(TamesignError):
    pass


class NotInvariant(TamesignError):
    pass
