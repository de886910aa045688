"""Exception hierarchy shared by all ghostlap modules."""


class GhostLapError(Exception):
    """Base class for errors raised by ghostlap."""


class DimensionError(GhostLapError, ValueError):
    pass


class DomainError(GhostLapError, ValueError):
    """A parameter lies outside the admissible range (theta, stencil size...)."""


class GeometryError(DomainError):
    pass


class UnsupportedError(GhostLapError, NotImplementedError):
    pass


class SingularityError(GhostLapError, ArithmeticError):
    pass


class ResourceError(GhostLapError, MemoryError):
    """Requested dense object exceeds the configured size cap."""


class NumericError(GhostLapError, ArithmeticError):
    pass


class DistributionTypeError(GhostLapError, ValueError):
    """Values carry imaginary parts too large for an eigenvalue-distribution test."""
