"""Exception types shared across the package."""


class GgmError(Exception):
    """Base class for every error this package raises on purpose."""


class DegenerateSampleError(GgmError):
    """The sample covariance is numerically singular (a Cholesky pivot collapsed)."""


class InsufficientSampleError(GgmError):
    """Too few observations for the requested test."""


class GenerationError(GgmError):
    """Random model generation could not reach positive definiteness."""


class DegenerateTruthError(GgmError):
    """ROC analysis needs at least one true edge and at least one true non-edge."""


class ConfigError(GgmError):
    """Invalid experiment configuration.  Collects every violation found."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))
