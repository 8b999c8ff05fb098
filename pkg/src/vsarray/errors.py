"""Exception hierarchy for vsarray.

Estimation-stage errors all derive from ``EstimationError`` and carry a
``stage`` attribute so the Monte Carlo harness can report which stage of the
pipeline failed a trial.
"""


class VsarrayError(Exception):
    """Base class for all vsarray errors."""


class ContractViolation(VsarrayError):
    """An input violated a documented precondition (bad shape, NaN, ...)."""


class GeometryError(VsarrayError):
    """Invalid array-geometry parameters."""


class LagError(VsarrayError):
    """Requested lag is absent from the difference co-array."""


class SmoothingError(VsarrayError):
    """Degenerate co-array: no usable contiguous segment."""


class ConfigError(VsarrayError):
    """Invalid scenario configuration."""


class EstimationError(VsarrayError):
    """Base class for estimator-stage failures; ``stage`` names the stage."""

    stage = "estimation"


class SubspaceError(EstimationError):
    """Noise subspace is empty (K too large for the virtual array)."""

    stage = "subspace"


class DetectionError(EstimationError):
    """Fewer spectral peaks than requested sources."""

    stage = "detection"


class PairingError(EstimationError):
    """Cross-covariance pairing stage failed."""

    stage = "pairing"


class RecoveryError(EstimationError):
    """Associate-angle recovery left the arcsine domain."""

    stage = "recovery"


class ConditioningError(EstimationError):
    """Numerical conditioning failure in the power-estimation stage."""

    stage = "conditioning"
