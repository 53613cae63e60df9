"""Exception types raised by :mod:`pairbound`."""


class PairboundError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(PairboundError, ValueError):
    pass


class OrthonormalityError(PairboundError, ValueError):
    """Raised when ``A^T A`` deviates from the identity beyond tolerance."""

    def __init__(self, residual, tol):
        self.residual = float(residual)
        self.tol = float(tol)
        super().__init__(
            f"columns are not orthonormal: residual {self.residual:.3e} > {self.tol:.1e}"
        )


class RankDeficiencyError(PairboundError, ValueError):
    pass


class DegenerateDirectionError(PairboundError, ValueError):
    pass


class NegativityError(PairboundError, ValueError):
    pass


class ConvergenceError(PairboundError, RuntimeError):
    pass


class InvariantViolation(PairboundError, RuntimeError):
    """A property guaranteed for exact inputs failed numerically."""


class CompositionError(PairboundError, ValueError):
    pass


class ClosureError(PairboundError, ValueError):
    """Polygon edge vectors do not sum to zero."""


class DegeneratePerimeterError(PairboundError, ValueError):
    pass
