"""Exception hierarchy shared across the package."""


class NHFloquetError(Exception):
    """Base class for every error raised by nhfloquet."""


class InvalidArgumentError(NHFloquetError, ValueError):
    """Non-finite or otherwise malformed numerical input."""


class NumericalError(NHFloquetError):
    """Base for failures that signal a numerically broken computation."""


class DegenerateStateError(NumericalError):
    """QR met a (numerically) rank-deficient matrix; the Gaussian state collapsed."""


class NonHermitianInputError(NumericalError):
    """Matrix handed to the Hermitian eigensolver violates the tolerance."""


class FitDegenerateError(NumericalError):
    """Least-squares design matrix is rank deficient or underdetermined."""


class SpectrumRangeError(NumericalError):
    """Correlation-block eigenvalue outside [0, 1] beyond tolerance."""


class WindowError(NHFloquetError, ValueError):
    """Averaging window does not fit the entanglement trace."""


class ConfigError(NHFloquetError, ValueError):
    """Invalid run configuration (bad key, bad value, missing field)."""
