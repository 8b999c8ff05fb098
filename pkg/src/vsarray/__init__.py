"""V-shaped sparse arrays for underdetermined 2-D DOA estimation.

Two uniform sparse linear portions sharing a reference sensor are folded
into a V whose opening angle makes the two associate direction cosines
identifiable. Each portion's difference co-array supports a spatially
smoothed covariance whose 1-D MUSIC spectrum resolves more sources than
physical sensors; a cross-covariance step pairs the two searches without
exhaustive matching.
"""

from .config import ScenarioConfig, SourceGenerator, config_from_dict, load_config
from .covariance import (
    SmoothedCovariance,
    cross_covariance,
    model_covariance,
    model_cross_covariance,
    sample_covariance,
    smoothed_covariance,
)
from .errors import (
    ConditioningError,
    ConfigError,
    ContractViolation,
    DetectionError,
    EstimationError,
    GeometryError,
    LagError,
    PairingError,
    RecoveryError,
    SmoothingError,
    SubspaceError,
    VsarrayError,
)
from .estimator import (
    PairedEstimates,
    SpectrumGrid,
    estimate_2d,
    estimate_av,
    estimate_from_covariances,
    estimate_source_powers,
    music_spectrum,
    pick_peaks,
)
from .experiments import (
    RmsePoint,
    RmseReport,
    geometry_report,
    run_rmse,
    run_scenario,
    write_geometry_report,
)
from .geometry import (
    CoarrayInfo,
    VShapedGeometry,
    build_vshaped,
    coprime_portion,
    difference_coarray,
    lag_pairs,
    max_resolvable,
    nested_portion,
    nested_split,
    sensor_count,
    v_angle,
)
from .kernels import backend_name
from .numerics import hermitian_eig, pseudo_inverse
from .signals import (
    SnapshotMatrix,
    SourceSet,
    associate_angles,
    noise_variance_for,
    recover_angles,
    simulate_snapshots,
    steering_matrix,
    steering_vector,
)

__version__ = "0.1.0"

__all__ = [
    "CoarrayInfo",
    "ConditioningError",
    "ConfigError",
    "ContractViolation",
    "DetectionError",
    "EstimationError",
    "GeometryError",
    "LagError",
    "PairedEstimates",
    "PairingError",
    "RecoveryError",
    "RmsePoint",
    "RmseReport",
    "ScenarioConfig",
    "SmoothedCovariance",
    "SmoothingError",
    "SnapshotMatrix",
    "SourceGenerator",
    "SourceSet",
    "SpectrumGrid",
    "SubspaceError",
    "VShapedGeometry",
    "VsarrayError",
    "associate_angles",
    "backend_name",
    "build_vshaped",
    "config_from_dict",
    "coprime_portion",
    "cross_covariance",
    "difference_coarray",
    "estimate_2d",
    "estimate_av",
    "estimate_from_covariances",
    "estimate_source_powers",
    "geometry_report",
    "hermitian_eig",
    "lag_pairs",
    "load_config",
    "max_resolvable",
    "model_covariance",
    "model_cross_covariance",
    "music_spectrum",
    "nested_portion",
    "nested_split",
    "noise_variance_for",
    "pick_peaks",
    "pseudo_inverse",
    "recover_angles",
    "run_rmse",
    "run_scenario",
    "sample_covariance",
    "sensor_count",
    "simulate_snapshots",
    "smoothed_covariance",
    "steering_matrix",
    "steering_vector",
    "v_angle",
    "write_geometry_report",
]
