"""Exception hierarchy shared across the package.

Exit-code mapping used by the CLI lives in ``monowave.cli``; library code
raises these types and never calls ``sys.exit``.
"""


class MonowaveError(Exception):
    """Base class for all package errors."""


class DomainError(MonowaveError):
    """An argument is outside the mathematical domain of an operation."""


class InvalidSpecError(MonowaveError):
    """A field specification or config document fails validation."""


class ResolutionError(MonowaveError):
    """A grid is too coarse (or degenerate) for the requested field."""


class NonManifoldError(MonowaveError):
    """An interior extracted mesh violates the edge-manifold invariant."""


class OpenMeshError(MonowaveError):
    """Euler characteristic requested for a mesh with boundary edges."""


class BoundaryComponentError(MonowaveError):
    """Topology classification requested for a boundary-touching component."""


class CutoffError(MonowaveError):
    """A truncation cutoff is too small for the requested error budget."""


class InsufficientDataError(MonowaveError):
    """Not enough data points for a statistical fit."""


class NoComponentError(MonowaveError):
    """A stability check needs at least one closed component to track."""


class InsufficientApproximationError(MonowaveError):
    """A T1 witness approximation error exceeds the available isotopy margin."""

    def __init__(self, message, measured_error=None, margin=None):
        super().__init__(message)
        self.measured_error = measured_error
        self.margin = margin


class ToleranceBreach(MonowaveError):
    """A verification suite exceeded a contract tolerance."""

    def __init__(self, identity, residual, tolerance):
        super().__init__(
            f"tolerance breach in {identity}: residual {residual:.3e} > {tolerance:.3e}"
        )
        self.identity = identity
        self.residual = residual
        self.tolerance = tolerance
