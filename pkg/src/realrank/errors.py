"""Exception types shared across the package."""


class RealRankError(Exception):
    """Base class for package errors."""


class ZeroPolynomialError(RealRankError, ValueError):
    """An operation needs a nonzero polynomial or form."""


class InvalidDirectionError(RealRankError, ValueError):
    """A direction vector is zero."""


class DegreeError(RealRankError, ValueError):
    """Degree outside the range an operation supports."""


class NotApolarError(RealRankError, ValueError):
    """A dual form does not annihilate the target form."""


class InconclusiveError(RealRankError):
    """A certification procedure could not reach a decision."""


class SingularCurveError(RealRankError):
    """A real singular point violates a smoothness hypothesis."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class DegenerateInputError(RealRankError, ValueError):
    """Input is degenerate (proportional forms, line inside a curve, ...)."""
