"""Exception hierarchy.

Three families map onto CLI exit codes: configuration problems (2),
physics/domain problems (3) and numerical failures (4).
"""


class PurePhotonError(Exception):
    """Base class for all package errors."""


class ConfigError(PurePhotonError, ValueError):
    """Malformed or missing configuration."""


class PhysicsError(PurePhotonError, ValueError):
    """Inputs outside the physical model's domain."""


class DomainError(PhysicsError):
    """Wavelength outside a dispersion model's validity window."""


class NoPhysicalSolutionError(PhysicsError):
    """No quasi-phase-matching period exists for the requested point."""


class DegenerateOrientationError(PhysicsError):
    """Phase-matching ridge is vertical; the tilt angle is undefined."""


class ResolutionError(PhysicsError):
    """Filter kernel too narrow for the sampling grid."""


class ContractError(PurePhotonError, ValueError):
    """Input violates a documented precondition (e.g. not normalized)."""


class NumericalError(PurePhotonError, ArithmeticError):
    """Numerical procedure failed."""


class DegenerateInputError(NumericalError):
    """Spectrum or grid carries no usable signal (all zeros)."""


class SpanError(NumericalError):
    """Half-maximum level is not bracketed inside the sampled range."""


class OptimizationError(NumericalError):
    """Bandwidth optimization found no interior maximum."""


class GridSizeError(NumericalError):
    """Grid too large for the requested brute-force computation."""
