"""Exception types shared by the q-calculus modules."""


class QGaussError(Exception):
    """Base class for library errors."""


class DomainError(QGaussError, ValueError):
    """An argument lies outside the region where an operation is defined."""


class TruncationError(QGaussError, ArithmeticError):
    """A series did not meet its tolerance within the allowed number of terms."""


class EvaluationError(QGaussError, ArithmeticError):
    """A user-supplied function returned a non-finite value."""


class ConsistencyError(QGaussError, ArithmeticError):
    """Two independent evaluation routes disagreed beyond their tolerance."""
