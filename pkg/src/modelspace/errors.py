"""Exception and warning classes raised by :mod:`modelspace`."""


class ModelSpaceError(ValueError):
    """Base class for all input and construction errors."""


class ZeroOnBoundary(ModelSpaceError):
    pass


class NotUnimodular(ModelSpaceError):
    pass


class EmptySpec(ModelSpaceError):
    pass


class NonPositiveMass(ModelSpaceError):
    pass


class OutsideDisk(ModelSpaceError):
    pass


class BadRadius(ModelSpaceError):
    pass


class IndexOutOfRange(ModelSpaceError):
    pass


class InsufficientCoefficients(ModelSpaceError):
    pass


class BadIterationCount(ModelSpaceError):
    pass


class DimensionMismatch(ModelSpaceError):
    pass


class LambdaTooLarge(ModelSpaceError):
    pass


class NotInModelSpace(ModelSpaceError):
    pass


class EmptyModelSpace(ModelSpaceError):
    pass


class TooLarge(ModelSpaceError):
    pass


class TruncationInsufficient(ModelSpaceError):
    """The truncated projection has eigenvalues too far from {0, 1}."""

    def __init__(self, message, eig_gap=None):
        super().__init__(message)
        self.eig_gap = eig_gap


class ConfigError(ModelSpaceError):
    """Malformed or invalid run configuration."""


class TruncationWarning(UserWarning):
    """Coefficient tail could not be certified below the requested tolerance."""
