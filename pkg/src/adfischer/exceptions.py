"""Exception hierarchy shared by the package."""

import numpy as np


class DimensionError(ValueError):
    """Matrix shapes are incompatible with the requested operation."""


class SingularMatrixError(np.linalg.LinAlgError):
    """A pivot fell below the singularity threshold."""

    def __init__(self, message, pivot):
        super().__init__(message)
        self.pivot = pivot


class ConvergenceError(np.linalg.LinAlgError):
    """An iterative routine exhausted its iteration budget."""


class NotPositiveDefiniteError(ValueError):
    """A matrix required to be positive definite failed certification."""

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class NotAccretiveDissipativeError(ValueError):
    """The Hermitian or skew-derived part of a matrix is not positive definite."""

    def __init__(self, message, cert_b=None, cert_c=None):
        super().__init__(message)
        self.cert_b = cert_b
        self.cert_c = cert_c


class DegenerateInstanceError(ValueError):
    """A block determinant vanished, so the Fischer ratio is undefined."""


class SoundnessError(RuntimeError):
    """A proven bound was exceeded; this indicates an implementation bug."""
