"""Ground-truth sources, associate-angle transforms, steering, and simulation.

Angles are carried in the sin-domain throughout.  For a source with direction
pair (sin theta, sin phi) and a V-angle omega, the two portions observe the
associate angles

    phi_a     = -sin(phi) sin(omega/2) + sin(theta) cos(omega/2)
    vartheta  =  sin(phi) sin(omega/2) + sin(theta) cos(omega/2)

which are the projections of the direction onto the two portion axes.  The map
is linear with determinant sin(omega) != 0, hence exactly invertible.
"""

from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from .errors import ConfigError, ContractViolation, RecoveryError
from .geometry import VShapedGeometry

RECOVERY_TOL = 1e-9


@dataclass(frozen=True)
class SourceSet:
    """K ground-truth sources as parallel arrays (sin theta, sin phi, power)."""

    sin_theta: np.ndarray
    sin_phi: np.ndarray
    power: np.ndarray

    def __post_init__(self):
        st = np.atleast_1d(np.asarray(self.sin_theta, dtype=float))
        sp = np.atleast_1d(np.asarray(self.sin_phi, dtype=float))
        pw = np.atleast_1d(np.asarray(self.power, dtype=float))
        object.__setattr__(self, "sin_theta", st)
        object.__setattr__(self, "sin_phi", sp)
        object.__setattr__(self, "power", pw)
        if not (st.shape == sp.shape == pw.shape) or st.ndim != 1 or st.size == 0:
            raise ConfigError("sources need matching non-empty 1-D arrays")
        if np.any(np.abs(st) > 1) or np.any(np.abs(sp) > 1):
            raise ConfigError("|sin theta| and |sin phi| must be <= 1")
        if np.any(pw <= 0):
            raise ConfigError("source powers must be positive")
        if len({(t, p) for t, p in zip(st, sp)}) != st.size:
            raise ConfigError("source (sin theta, sin phi) pairs must be distinct")

    @property
    def k(self) -> int:
        return int(self.sin_theta.size)

    def validate_for(self, omega: float):
        """Reject sources whose associate angles alias on the virtual ULA."""
        phi_a, vartheta = associate_angles(self.sin_theta, self.sin_phi, omega)
        if np.any(np.abs(phi_a) >= 1) or np.any(np.abs(vartheta) >= 1):
            raise ConfigError(
                "associate angles fall outside (-1, 1); the scenario aliases"
            )
        return phi_a, vartheta


def associate_angles(sin_theta, sin_phi, omega):
    """Map (sin theta, sin phi) to the portion-axis associates (phi_a, vartheta)."""
    sin_theta = np.asarray(sin_theta, dtype=float)
    sin_phi = np.asarray(sin_phi, dtype=float)
    s, c = np.sin(omega / 2.0), np.cos(omega / 2.0)
    phi_a = -sin_phi * s + sin_theta * c
    vartheta = sin_phi * s + sin_theta * c
    return phi_a, vartheta


def recover_angles(phi_a, vartheta, omega):
    """Invert associate_angles; raises RecoveryError outside the sine domain.

    sin theta = (phi_a + vartheta) / (2 cos(omega/2)),
    sin phi   = (vartheta - sin theta cos(omega/2)) / sin(omega/2).
    """
    phi_a = np.asarray(phi_a, dtype=float)
    vartheta = np.asarray(vartheta, dtype=float)
    s, c = np.sin(omega / 2.0), np.cos(omega / 2.0)
    sin_theta = (phi_a + vartheta) / (2.0 * c)
    sin_phi = (vartheta - sin_theta * c) / s
    if np.any(np.abs(sin_theta) > 1 + RECOVERY_TOL) or np.any(
        np.abs(sin_phi) > 1 + RECOVERY_TOL
    ):
        raise RecoveryError("recovered angles leave the sine domain")
    return np.clip(sin_theta, -1.0, 1.0), np.clip(sin_phi, -1.0, 1.0)


def steering_vector(p, psi) -> np.ndarray:
    """Steering vector with element i = exp(j pi p[i] psi) (d = lambda/2)."""
    p = np.asarray(p, dtype=float)
    return np.exp(1j * np.pi * p * float(psi))


def steering_matrix(p, psis) -> np.ndarray:
    """Columns steering_vector(p, psi) for each psi."""
    p = np.asarray(p, dtype=float)
    psis = np.atleast_1d(np.asarray(psis, dtype=float))
    return np.exp(1j * np.pi * np.outer(p, psis))


@dataclass(frozen=True)
class SnapshotMatrix:
    """Complex P x T observations of one portion plus the noise variance used."""

    portion: str  # 'U' or 'V'
    data: np.ndarray
    noise_variance: float

    def __post_init__(self):
        if self.data.ndim != 2:
            raise ContractViolation("snapshot data must be a P x T matrix")

    @property
    def sensors(self) -> int:
        return int(self.data.shape[0])

    @property
    def snapshots(self) -> int:
        return int(self.data.shape[1])


def noise_variance_for(powers, snr_db: float) -> float:
    """Noise variance from the SNR convention: mean source power / 10^(SNR/10)."""
    if np.isnan(snr_db):
        raise ConfigError("snr_db is NaN")
    if np.isinf(snr_db) and snr_db > 0:
        return 0.0
    return float(np.mean(powers)) / 10.0 ** (snr_db / 10.0)


def simulate_snapshots(
    geom: VShapedGeometry,
    src: SourceSet,
    snr_db: float,
    t: int,
    seed: Union[int, np.random.SeedSequence],
) -> Tuple[SnapshotMatrix, SnapshotMatrix]:
    """Simulate T snapshots of both portions from a seeded random stream.

    Source waveforms are i.i.d. circular complex Gaussian with per-source
    variance, shared between the portions; noise is circular complex Gaussian
    with variance mean(power)/10^(snr_db/10), independent across portions,
    sensors, and snapshots.  Sub-streams for sources and the two noise fields
    are spawned from the master seed, so results are fully reproducible.
    """
    if t < 1:
        raise ConfigError(f"need at least one snapshot, got T={t}")
    phi_a, vartheta = src.validate_for(geom.omega)
    if isinstance(seed, np.random.SeedSequence):
        ss = seed
    else:
        ss = np.random.SeedSequence(int(seed))
    rng_src, rng_nu, rng_nv = (np.random.default_rng(s) for s in ss.spawn(3))

    k = src.k
    amp = np.sqrt(src.power / 2.0)[:, None]
    waveforms = amp * (
        rng_src.standard_normal((k, t)) + 1j * rng_src.standard_normal((k, t))
    )
    nvar = noise_variance_for(src.power, snr_db)
    p = geom.portion_u
    a_u = steering_matrix(p, phi_a)
    a_v = steering_matrix(p, vartheta)

    def portion_noise(rng):
        if nvar == 0.0:
            return 0.0
        scale = np.sqrt(nvar / 2.0)
        return scale * (
            rng.standard_normal((p.size, t)) + 1j * rng.standard_normal((p.size, t))
        )

    u = SnapshotMatrix("U", a_u @ waveforms + portion_noise(rng_nu), nvar)
    v = SnapshotMatrix("V", a_v @ waveforms + portion_noise(rng_nv), nvar)
    return u, v
