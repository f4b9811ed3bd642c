class LabError(Exception):
    """
    Base class for every error raised by the lab.
    `exit_code` is what the command line reports for it.
    """
    exit_code = 2


class DomainError(LabError, ValueError):
    """A mathematical domain violation (tangent at a dyadic point, ...)."""
    exit_code = 2


class FitError(DomainError):
    """Regression samples do not determine a slope."""


class ResourceError(LabError):
    """A configured resource limit was reached."""
    exit_code = 3


class ExponentCapError(ResourceError):
    def __init__(self, message, value=None, cap=None):
        super().__init__(message)
        self.value = value
        self.cap = cap


class PrecisionError(ResourceError):
    pass


class SymbolicGenerationError(ResourceError):
    """
    A willow generation is too large to enumerate.
    Callers fall back to the exponent-space checks.
    """
