"""Exception types raised across the package."""


class DowlingKLError(Exception):
    pass


class InconsistentSamples(DowlingKLError):
    pass


class NonIntegerCoefficients(DowlingKLError):
    pass


class NotCompletable(DowlingKLError):
    pass


class NotDivisible(DowlingKLError):
    pass


class NotAMatroid(DowlingKLError):
    pass


class InvalidSite(DowlingKLError):
    pass


class CapExceeded(DowlingKLError):
    pass


class TooLarge(CapExceeded):
    pass


class NotGraded(DowlingKLError):
    pass


class InvalidGroup(DowlingKLError):
    pass


class BadConstantTerm(DowlingKLError):
    pass


class NotInvertible(DowlingKLError):
    pass


class NonIntegralCoefficient(DowlingKLError):
    pass


class DegreeMismatch(DowlingKLError):
    pass


class Mismatch(DowlingKLError):
    """A cross-check between two independent computations disagreed."""

    def __init__(self, message, *, where=None, left=None, right=None):
        super().__init__(message)
        self.where = where
        self.left = left
        self.right = right
