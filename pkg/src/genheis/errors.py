"""Exception types shared across the package."""


class GenHeisError(Exception):
    """Base class for all package errors."""


class DimensionError(GenHeisError, ValueError):
    """Vector or element shape does not match the ambient space."""


class ModeError(GenHeisError, TypeError):
    """Exact and float scalars were mixed, or an exact result is not representable."""


class DomainError(GenHeisError, ValueError):
    """An operation was called outside its mathematical domain."""


class UnsupportedRepresentationError(GenHeisError):
    """The matrix model only exists for the plain dot-product pairing."""


class BoundViolationError(GenHeisError, ValueError):
    """A double-sequence entry exceeded its declared bound."""


class ExtractionFailedError(GenHeisError):
    """Subsequence extraction ran out of indices before both limits stabilized.

    The best partial result (possibly ``None``) is kept on ``partial``.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class ConfigError(GenHeisError, ValueError):
    """Invalid experiment configuration."""
