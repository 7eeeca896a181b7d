"""Exception types raised by the root-finding operations."""


class MultirootsError(Exception):
    """Base class for all numerical errors raised by this package."""


class NonFiniteError(MultirootsError):
    """An intermediate or final value overflowed to inf or became nan."""


class CollisionError(MultirootsError):
    """Two approximations are closer than the collision threshold."""


class SingularDenominatorError(MultirootsError):
    """The correction denominator of an update is numerically zero."""


class ResidualZeroError(MultirootsError):
    """The polynomial value at an approximation is below the residual
    tolerance, so the logarithmic derivative is undefined there.  Callers
    should freeze the offending index instead of updating it."""

    def __init__(self, index, residual):
        super().__init__(
            f"residual {residual:.3e} at index {index} is below tolerance; "
            f"freeze this index instead of updating it"
        )
        self.index = index
        self.residual = residual


class DegenerateSystemError(MultirootsError):
    """Operation requires at least two distinct roots (separation is a
    minimum over pairs)."""


class InsufficientDataError(MultirootsError):
    """Too few usable iteration records to estimate a convergence order."""
