"""Exception types shared across the package."""


class ChargePlaneError(Exception):
    """Base class for all package errors."""


class ConfigError(ChargePlaneError):
    """Invalid configuration input (bad field, unknown key, schema violation)."""


class EigensolverError(ChargePlaneError):
    """Dense eigensolver failed to converge or violated its residual contract."""

    def __init__(self, message, order=None):
        super().__init__(message)
        self.order = order


class DegenerateEigenvectorError(ChargePlaneError):
    """Quasi-null bilinear norm x.T @ x; derivative formula unusable.

    Callers should fall back to a finite-difference or secant step.
    """


class AmbiguousSelectionError(ChargePlaneError):
    """Two eigenvalues equidistant from the target; selection is not well defined."""
