"""Exception hierarchy shared by all hankelpade modules."""


class HankelPadeError(Exception):
    """Base class for all computation errors raised by this package."""


class ZeroPolynomialError(HankelPadeError):
    """Root finding was asked for the identically zero polynomial."""


class InvalidOrderError(HankelPadeError):
    """A series order below the minimum (nmax < 3) was requested."""


class InsufficientSeriesError(HankelPadeError):
    """The series does not carry enough coefficients for the operation."""


class DimensionTooLargeError(HankelPadeError):
    """Exact determinant requested beyond the practical dimension bound."""


class NoSignChangeError(HankelPadeError):
    """No determinant sign change was found inside the search window."""


class PrecisionExhaustedError(HankelPadeError):
    """The precision escalation ladder failed to stabilize a result."""


class SingularSystemError(HankelPadeError):
    """The Pade denominator system is numerically singular at working precision."""


class PoleEncounteredError(HankelPadeError):
    """A rational-function denominator vanished at the evaluation point."""


class InsufficientDataError(HankelPadeError):
    """Too few sequence records for the requested fit or export."""
