"""MUSIC spectra and the paired 2-D estimation pipeline.

The pipeline estimates both direction components of K sources from the two
portions of a V-shaped array:

1. azimuth-associate values phi_a from the smoothed covariance of portion U
   (subspace MUSIC on the virtual half-array 0..L-1);
2. source-power matrix from the physical covariance eigenpairs and the
   pseudo-inverse of the estimated steering matrix;
3. elevation-associate steering matrix by closed-form least squares on the
   sample cross-covariance (this step inherits the column order of step 1,
   which is what pairs the two components automatically);
4. per-source elevation associates by rank-1 MUSIC on each estimated column;
5. inversion of the associate-angle map back to (sin theta, sin phi).
"""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .covariance import SmoothedCovariance, cross_covariance, sample_covariance, smoothed_covariance
from .errors import ConditioningError, ContractViolation, DetectionError, PairingError, SubspaceError
from .geometry import VShapedGeometry
from .numerics import hermitian_eig, pseudo_inverse
from .signals import recover_angles, steering_matrix

DEFAULT_GRID_POINTS = 4001
DENOMINATOR_FLOOR = 1e-16  # relative to ||a||^2 = L
RS_PINV_TOL = 1e-10


@dataclass(frozen=True)
class SpectrumGrid:
    """Pseudo-spectrum samples on a uniform sin-domain grid.

    ``power`` is the regularized MUSIC spectrum 1/max(denominator, floor);
    ``denominator`` keeps the raw projection values for sub-grid refinement.
    """

    psi_values: np.ndarray
    power: np.ndarray
    grid_step: float
    denominator: np.ndarray


@dataclass(frozen=True)
class PairedEstimates:
    """Per-source estimates, sorted by ascending azimuth associate."""

    phi_a_hat: np.ndarray
    vartheta_hat: np.ndarray
    sin_theta_hat: np.ndarray
    sin_phi_hat: np.ndarray

    @property
    def k(self) -> int:
        return int(self.phi_a_hat.size)


def _grid(grid_points: int) -> np.ndarray:
    if grid_points < 5:
        raise ContractViolation(f"grid needs at least 5 points, got {grid_points}")
    return np.linspace(-1.0, 1.0, int(grid_points))


def music_spectrum(rss: SmoothedCovariance, k: int, grid_points: int = DEFAULT_GRID_POINTS) -> SpectrumGrid:
    """MUSIC pseudo-spectrum of a smoothed covariance over psi in [-1, 1].

    The noise subspace is spanned by the eigenvectors beyond the top k; the
    denominator is floored at 1e-16 * L to keep the spectrum finite at exact
    orthogonality points.
    """
    length = rss.half_length
    if k < 1:
        raise ContractViolation(f"need k >= 1, got {k}")
    if k >= length:
        raise SubspaceError(
            f"k={k} leaves no noise subspace on a virtual array of {length}"
        )
    _, vecs = hermitian_eig(rss.matrix)
    noise = vecs[:, k:]
    psis = _grid(grid_points)
    den = kernels.spectrum_denominator(noise, np.arange(length), psis)
    power = 1.0 / np.maximum(den, DENOMINATOR_FLOOR * length)
    return SpectrumGrid(
        psi_values=psis, power=power, grid_step=psis[1] - psis[0], denominator=den
    )


def _parabolic_offset(dm: float, d0: float, dp: float) -> float:
    """Sub-grid minimum offset of a 3-point parabola through denominator values."""
    curv = dm - 2.0 * d0 + dp
    if curv <= 0.0:
        return 0.0
    return float(np.clip(0.5 * (dm - dp) / curv, -0.5, 0.5))


def pick_peaks(spectrum: SpectrumGrid, k: int) -> np.ndarray:
    """Top-k local maxima of the spectrum, parabolically refined, ascending.

    Peaks are interior local maxima ranked by power (ties broken by lower
    psi).  Raises DetectionError when fewer than k maxima exist.  Refinement
    interpolates the raw denominator, which is essentially exact for the
    quadratic minima produced by noiseless data.
    """
    if k < 1:
        raise ContractViolation(f"need k >= 1, got {k}")
    p = spectrum.power
    interior = np.zeros(p.size, dtype=bool)
    interior[1:-1] = (p[1:-1] > p[:-2]) & (p[1:-1] >= p[2:])
    idxs = np.nonzero(interior)[0]
    if idxs.size < k:
        raise DetectionError(f"found {idxs.size} spectral peaks, need {k}")
    order = np.lexsort((spectrum.psi_values[idxs], -p[idxs]))
    chosen = idxs[order[:k]]
    den = spectrum.denominator
    refined = [
        spectrum.psi_values[i]
        + _parabolic_offset(den[i - 1], den[i], den[i + 1]) * spectrum.grid_step
        for i in chosen
    ]
    return np.sort(np.asarray(refined))


def estimate_source_powers(r_u: np.ndarray, a_u_hat: np.ndarray) -> np.ndarray:
    """K x K source-covariance estimate from the physical portion.

    Uses the s = min(K, P-1) strongest eigenpairs of the portion covariance
    and the pseudo-inverse of the estimated steering matrix.  Diagonal entries
    are meaningful as powers only up to the noise contribution retained in the
    signal eigenvalues; downstream use clamps them to real non-negative.
    """
    r_u = np.asarray(r_u)
    a_u_hat = np.asarray(a_u_hat)
    n_sensors, k = a_u_hat.shape
    if r_u.shape != (n_sensors, n_sensors):
        raise ContractViolation("covariance and steering shapes do not match")
    s = min(k, n_sensors - 1)
    try:
        vals, vecs = hermitian_eig(r_u)
        sig_vals, sig_vecs = vals[:s], vecs[:, :s]
        a_pinv = pseudo_inverse(a_u_hat)
        rs = a_pinv @ (sig_vecs * sig_vals) @ sig_vecs.conj().T @ a_pinv.conj().T
    except np.linalg.LinAlgError as exc:
        raise ConditioningError(f"power estimation failed: {exc}") from exc
    return rs


def estimate_av(r_uv: np.ndarray, a_u_hat: np.ndarray, rs_hat: np.ndarray) -> np.ndarray:
    """Least-squares estimate of the elevation-associate steering matrix.

    Closed form (Rs^-1 Au^+ Ruv)^H with the inverse taken as pseudo-inverse
    at relative cutoff 1e-10; column k corresponds to column k of a_u_hat, so
    the pairing order is preserved.  Raises PairingError when rs_hat carries
    no usable scale.
    """
    rs_hat = np.asarray(rs_hat)
    if not np.all(np.isfinite(rs_hat)):
        raise PairingError("source-power estimate is not finite")
    smax = np.linalg.norm(rs_hat, 2)
    if smax == 0.0:
        raise PairingError("source-power estimate is singular")
    try:
        rs_inv = pseudo_inverse(rs_hat, RS_PINV_TOL)
        av = (rs_inv @ pseudo_inverse(a_u_hat) @ np.asarray(r_uv)).conj().T
    except np.linalg.LinAlgError as exc:
        raise PairingError(f"pairing least squares failed: {exc}") from exc
    return av


def elevation_per_source(av_column: np.ndarray, p, psis: np.ndarray) -> float:
    """Elevation associate of one source from its steering-column estimate.

    Rank-1 MUSIC: the noise projector of the column's outer product is the
    complement of the column itself, so the denominator is
    ||a||^2 - |c^H a|^2 with c the normalized column.  Returns the grid
    argmax, parabolically refined.
    """
    av_column = np.asarray(av_column, dtype=np.complex128)
    norm = np.linalg.norm(av_column)
    if norm == 0.0 or not np.isfinite(norm):
        raise PairingError("degenerate steering-column estimate")
    den = kernels.rank1_complement_denominator(av_column / norm, np.asarray(p, float), psis)
    i = int(np.argmin(den))
    if 0 < i < den.size - 1:
        offset = _parabolic_offset(den[i - 1], den[i], den[i + 1])
    else:
        offset = 0.0
    return float(psis[i] + offset * (psis[1] - psis[0]))


def _run_pipeline(r_u, r_uv, geom: VShapedGeometry, k: int, grid_points: int) -> PairedEstimates:
    p = geom.portion_u
    rss = smoothed_covariance(r_u, p, half_length=geom.half_length)
    spectrum = music_spectrum(rss, k, grid_points)
    phi_a = pick_peaks(spectrum, k)
    a_u = steering_matrix(p, phi_a)
    rs = estimate_source_powers(r_u, a_u)
    av = estimate_av(r_uv, a_u, rs)
    psis = _grid(grid_points)
    vartheta = np.array(
        [elevation_per_source(av[:, i], p, psis) for i in range(k)]
    )
    sin_theta, sin_phi = recover_angles(phi_a, vartheta, geom.omega)
    return PairedEstimates(
        phi_a_hat=phi_a,
        vartheta_hat=vartheta,
        sin_theta_hat=sin_theta,
        sin_phi_hat=sin_phi,
    )


def estimate_2d(u, v, geom: VShapedGeometry, k: int, grid_points: int = DEFAULT_GRID_POINTS) -> PairedEstimates:
    """Paired 2-D estimation from snapshot matrices of the two portions."""
    if k > geom.max_sources:
        raise SubspaceError(
            f"k={k} exceeds the resolvable limit {geom.max_sources} of this geometry"
        )
    r_u = sample_covariance(u)
    r_uv = cross_covariance(u, v)
    return _run_pipeline(r_u, r_uv, geom, k, grid_points)


def estimate_from_covariances(r_u, r_uv, geom: VShapedGeometry, k: int, grid_points: int = DEFAULT_GRID_POINTS) -> PairedEstimates:
    """Same pipeline on externally supplied (e.g. exact-statistics) covariances."""
    if k > geom.max_sources:
        raise SubspaceError(
            f"k={k} exceeds the resolvable limit {geom.max_sources} of this geometry"
        )
    return _run_pipeline(np.asarray(r_u), np.asarray(r_uv), geom, k, grid_points)
