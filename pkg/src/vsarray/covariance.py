"""Sample covariances and the lag-averaged smoothed Toeplitz covariance.

The smoothed covariance is the rank-enhanced L x L Toeplitz matrix built by
averaging the sample covariance over all sensor pairs sharing a co-array lag,
restricted to the contiguous segment [-(L-1), L-1].  Its signal subspace
matches that of a virtual ULA with L elements, which is what lets K > P
sources be resolved from P physical sensors.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ContractViolation, SmoothingError
from .geometry import difference_coarray, _validate_positions
from .signals import SnapshotMatrix, steering_matrix


def _snapshot_data(x):
    if isinstance(x, SnapshotMatrix):
        return x.data
    x = np.asarray(x)
    if x.ndim != 2:
        raise ContractViolation("expected a P x T snapshot matrix")
    return x


def sample_covariance(x) -> np.ndarray:
    """Biased sample covariance (1/T) X X^H of one portion."""
    data = _snapshot_data(x)
    t = data.shape[1]
    if t < 1:
        raise ContractViolation("need at least one snapshot")
    return (data @ data.conj().T) / t


def cross_covariance(u, v) -> np.ndarray:
    """Sample cross-covariance (1/T) U V^H between the two portions.

    Noise-free in the infinite-snapshot limit because the portion noises are
    independent.
    """
    du, dv = _snapshot_data(u), _snapshot_data(v)
    if du.shape[1] != dv.shape[1]:
        raise ContractViolation(
            f"snapshot counts differ: {du.shape[1]} vs {dv.shape[1]}"
        )
    return (du @ dv.conj().T) / du.shape[1]


@dataclass(frozen=True)
class SmoothedCovariance:
    """L x L Toeplitz Hermitian matrix over the virtual half-array 0..L-1."""

    matrix: np.ndarray
    half_length: int
    source_portion: str  # 'U' or 'V'


def smoothed_covariance(
    r: np.ndarray, p, half_length: int = None, source_portion: str = "U"
) -> SmoothedCovariance:
    """Average each co-array lag of a sample covariance and assemble Toeplitz.

    For every lag l in [-(L-1), L-1], u[l] is the mean of R over the index
    pairs with p[i] - p[j] = l; Hermitian symmetry is enforced by averaging
    u[l] with conj(u[-l]) before the L x L Toeplitz assembly (entry (i, j) is
    u[i-j]).  ``half_length`` defaults to the maximal contiguous run of the
    co-array; pass the geometry's guaranteed half-length to ignore accidental
    longer runs.  Sensor ordering is irrelevant: rows/columns of ``r`` must
    simply correspond to ``p`` elementwise.
    """
    p = np.asarray(p)
    r = np.asarray(r)
    if r.shape != (p.size, p.size):
        raise ContractViolation(f"covariance shape {r.shape} does not match positions")
    order = np.argsort(p)
    p = _validate_positions(p[order])
    r = r[np.ix_(order, order)]
    length = (
        int(half_length)
        if half_length is not None
        else difference_coarray(p).half_length
    )
    if length < 2:
        raise SmoothingError("degenerate co-array: contiguous half-length < 2")

    lag = p[:, None] - p[None, :]
    u = np.empty(2 * length - 1, dtype=np.complex128)
    for l in range(length):
        fwd = r[lag == l].mean()
        rev = r[lag == -l].mean()
        val = 0.5 * (fwd + np.conj(rev))
        u[length - 1 + l] = val
        u[length - 1 - l] = np.conj(val)
    idx = np.subtract.outer(np.arange(length), np.arange(length))
    return SmoothedCovariance(
        matrix=u[idx + length - 1], half_length=length, source_portion=source_portion
    )


def model_covariance(p, psis, powers, noise_var: float = 0.0) -> np.ndarray:
    """Exact-statistics portion covariance A diag(powers) A^H + noise_var I."""
    a = steering_matrix(p, psis)
    pw = np.atleast_1d(np.asarray(powers, dtype=float))
    return (a * pw) @ a.conj().T + noise_var * np.eye(a.shape[0])


def model_cross_covariance(p, psis_u, psis_v, powers) -> np.ndarray:
    """Exact-statistics cross-covariance A_u diag(powers) A_v^H."""
    a_u = steering_matrix(p, psis_u)
    a_v = steering_matrix(p, psis_v)
    pw = np.atleast_1d(np.asarray(powers, dtype=float))
    return (a_u * pw) @ a_v.conj().T
