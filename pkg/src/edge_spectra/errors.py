"""Exception types shared across the solvers."""


class EdgeSpectraError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(EdgeSpectraError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class UnsupportedRegimeError(EdgeSpectraError):
    """The requested parameter regime is deliberately not handled."""


class CollarTooWideError(EdgeSpectraError):
    """The metric pinch of the collar is >= 1; shrink the collar width."""


class IntegrationFailureError(EdgeSpectraError):
    """The radial integrator blew up despite renormalization."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}
