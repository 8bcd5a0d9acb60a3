"""Exception types raised by the library."""


class FractorusError(Exception):
    """Base class for all library errors."""


class DegenerateOrder(FractorusError):
    """The angle is too close to a multiple of pi; the torus collapses."""


class DimensionMismatch(FractorusError):
    """Vector arguments do not share a common dimension."""


class GridTooCoarse(FractorusError):
    """The grid cannot hold the requested coefficient radius."""


class RadiusExceeded(FractorusError):
    """A mean/partial sum was requested beyond the stored radius."""


class GridMismatch(FractorusError):
    """Two signals do not live on the same grid."""


class NonPositiveTime(FractorusError):
    """Kernel time (or diffusivity) parameter must be positive."""


class NegativeTime(FractorusError):
    """Evolution time must be non-negative."""


class InsufficientTimeLevels(FractorusError):
    """Residual checks need at least three uniformly spaced time levels."""


class DimensionUnsupported(FractorusError):
    """The operation is only defined in one dimension."""


class NotDecayingInput(FractorusError):
    """The target sequence does not decay over the requested range."""
