"""Exception hierarchy shared by every module."""


class InfoTheoryError(ValueError):
    """Base class for all toolkit errors."""


class ValidationError(InfoTheoryError):
    """A pmf, matrix, spectrum or file failed validation."""


class DomainError(InfoTheoryError):
    """A scalar argument lies outside the function's domain."""


class ConvergenceError(InfoTheoryError, RuntimeError):
    """An iterative solver hit its iteration cap before reaching tolerance."""

    def __init__(self, message, gap=None, iterations=None):
        super().__init__(message)
        self.gap = gap
        self.iterations = iterations


class ResourceError(InfoTheoryError):
    """The requested computation exceeds the tractability bound."""
