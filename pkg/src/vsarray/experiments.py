"""Experiment drivers: single scenarios, Monte Carlo RMSE sweeps, geometry tables.

All artifacts are CSV with a header row, 10-significant-digit decimals, and LF
line endings, so identical configurations and seeds produce byte-identical
files.
"""

import math
import os
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np
from scipy.optimize import linear_sum_assignment

from .config import ScenarioConfig
from .covariance import cross_covariance, sample_covariance, smoothed_covariance
from .errors import ConfigError, EstimationError
from .estimator import (
    PairedEstimates,
    estimate_2d,
    estimate_av,
    estimate_source_powers,
    elevation_per_source,
    music_spectrum,
    pick_peaks,
)
from .geometry import VShapedGeometry, build_vshaped, max_resolvable, sensor_count
from .kernels import rank1_complement_denominator
from .signals import SourceSet, simulate_snapshots, steering_matrix, recover_angles

# Geometry/source-count pairings used for the comparison table: interleaved
# coprime (M, N) and nested N rows covering the report's sensor-count cells.
DEFAULT_REPORT_ROWS: Tuple[Tuple[str, Tuple[int, ...]], ...] = (
    ("coprime", (2, 5)),
    ("nested", (6,)),
    ("coprime", (3, 5)),
    ("nested", (8,)),
    ("coprime", (2, 9)),
    ("coprime", (4, 5)),
    ("nested", (10,)),
    ("coprime", (4, 7)),
)


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        if math.isnan(value):
            return ""
        return format(float(value), ".10g")
    return str(value)


def write_csv(path, header: Sequence[str], rows: Sequence[Sequence]) -> str:
    """Write rows as CSV with LF endings and 10-significant-digit decimals."""
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write("\n".join(lines) + "\n")
    return str(path)


def geometry_report(rows=None) -> List[dict]:
    """Sensor-count / resolvability table for a list of geometry parameters."""
    rows = DEFAULT_REPORT_ROWS if rows is None else rows
    out = []
    for kind, params in rows:
        geom = build_vshaped(kind, params)
        out.append(
            {
                "kind": kind,
                "params": "x".join(str(x) for x in geom.params),
                "sensors": sensor_count(kind, params),
                "max_resolvable": max_resolvable(kind, params),
                "omega_deg": math.degrees(geom.omega),
                "half_length": geom.half_length,
            }
        )
    return out


def write_geometry_report(out_dir, rows=None) -> str:
    table = geometry_report(rows)
    return write_csv(
        os.path.join(out_dir, "geometry.csv"),
        ["kind", "params", "sensors", "max_resolvable", "omega_deg", "half_length"],
        [list(r.values()) for r in table],
    )


def _geometry_summary(geom: VShapedGeometry) -> str:
    return (
        f"{geom.kind}{geom.params}: {geom.total_sensors} sensors, "
        f"omega = {math.degrees(geom.omega):.4f} deg, L = {geom.half_length}, "
        f"max K = {geom.max_sources}"
    )


def run_scenario(cfg: ScenarioConfig, out_dir=".", emit_spectra: bool = True):
    """Run one estimation scenario and write estimates (and spectra) CSVs.

    Returns (PairedEstimates, written paths).  The pipeline stages are
    composed here rather than through estimate_2d so the azimuth spectrum and
    the per-source elevation spectra can be exported.
    """
    geom = cfg.build_geometry()
    src = cfg.build_sources(geom)
    u, v = simulate_snapshots(geom, src, cfg.snr_db, cfg.snapshots, cfg.seed)
    p = geom.portion_u

    r_u = sample_covariance(u)
    r_uv = cross_covariance(u, v)
    rss = smoothed_covariance(r_u, p, half_length=geom.half_length)
    spectrum = music_spectrum(rss, src.k, cfg.grid_points)
    phi_a = pick_peaks(spectrum, src.k)
    a_u = steering_matrix(p, phi_a)
    rs = estimate_source_powers(r_u, a_u)
    av = estimate_av(r_uv, a_u, rs)
    psis = spectrum.psi_values
    vartheta = np.array([elevation_per_source(av[:, i], p, psis) for i in range(src.k)])
    sin_theta, sin_phi = recover_angles(phi_a, vartheta, geom.omega)
    est = PairedEstimates(
        phi_a_hat=phi_a,
        vartheta_hat=vartheta,
        sin_theta_hat=sin_theta,
        sin_phi_hat=sin_phi,
    )

    paths = [
        write_csv(
            os.path.join(out_dir, "estimates.csv"),
            ["k", "phi_a_hat", "vartheta_hat", "sin_theta_hat", "sin_phi_hat", "theta_deg", "phi_deg"],
            [
                [
                    i,
                    est.phi_a_hat[i],
                    est.vartheta_hat[i],
                    est.sin_theta_hat[i],
                    est.sin_phi_hat[i],
                    math.degrees(math.asin(est.sin_theta_hat[i])),
                    math.degrees(math.asin(est.sin_phi_hat[i])),
                ]
                for i in range(est.k)
            ],
        )
    ]
    if emit_spectra:
        columns = [psis, spectrum.power]
        header = ["psi", "p_u"]
        floor = 1e-16 * p.size
        for i in range(src.k):
            c = av[:, i] / np.linalg.norm(av[:, i])
            den = rank1_complement_denominator(c, np.asarray(p, float), psis)
            columns.append(1.0 / np.maximum(den, floor))
            header.append(f"p_v_{i}")
        paths.append(
            write_csv(
                os.path.join(out_dir, "spectra.csv"),
                header,
                np.column_stack(columns),
            )
        )
    return est, paths


@dataclass(frozen=True)
class RmsePoint:
    """One sweep point of a Monte Carlo run."""

    sweep_value: float
    rmse_sin: float  # NaN when every trial failed
    rmse_deg: float
    stderr_sin: float
    failures: int
    trials: int


@dataclass(frozen=True)
class RmseReport:
    sweep_field: str  # 'snr_db' or 'snapshots'
    points: Tuple[RmsePoint, ...]


def _matched_squared_errors(src: SourceSet, est: PairedEstimates):
    """Sum of squared sin-domain and degree-domain errors under best matching."""
    true_pairs = np.column_stack([src.sin_theta, src.sin_phi])
    est_pairs = np.column_stack([est.sin_theta_hat, est.sin_phi_hat])
    cost = ((true_pairs[:, None, :] - est_pairs[None, :, :]) ** 2).sum(axis=2)
    rows, cols = linear_sum_assignment(cost)
    sq_sin = cost[rows, cols].sum()
    deg_true = np.degrees(np.arcsin(true_pairs[rows]))
    deg_est = np.degrees(np.arcsin(np.clip(est_pairs[cols], -1.0, 1.0)))
    sq_deg = ((deg_true - deg_est) ** 2).sum()
    return sq_sin, sq_deg


def run_rmse(cfg: ScenarioConfig, out_dir=".") -> Tuple[RmseReport, str]:
    """Monte Carlo RMSE over an SNR or snapshot sweep.

    Per sweep point, runs cfg.trials independent trials seeded from
    (seed, point index, trial index) sub-streams; estimates are matched to
    ground truth by minimum-total-squared-error assignment before the RMSE
    aggregate sqrt(sum / (2 J K)).  Trials that raise an estimation-stage
    error are counted as failures and excluded from the aggregate.
    """
    if (cfg.snr_sweep is None) == (cfg.snapshot_sweep is None):
        raise ConfigError("rmse needs exactly one of snr_sweep or snapshot_sweep")
    sweep_field = "snr_db" if cfg.snr_sweep is not None else "snapshots"
    sweep = cfg.snr_sweep if cfg.snr_sweep is not None else cfg.snapshot_sweep

    geom = cfg.build_geometry()
    src = cfg.build_sources(geom)
    points = []
    for p_idx, value in enumerate(sweep):
        snr_db = value if sweep_field == "snr_db" else cfg.snr_db
        t = cfg.snapshots if sweep_field == "snr_db" else int(value)
        per_trial_sin, per_trial_deg = [], []
        failures = 0
        for trial in range(cfg.trials):
            seed = np.random.SeedSequence(entropy=cfg.seed, spawn_key=(p_idx, trial))
            u, v = simulate_snapshots(geom, src, snr_db, t, seed)
            try:
                est = estimate_2d(u, v, geom, src.k, cfg.grid_points)
            except EstimationError:
                failures += 1
                continue
            sq_sin, sq_deg = _matched_squared_errors(src, est)
            per_trial_sin.append(sq_sin / (2.0 * src.k))
            per_trial_deg.append(sq_deg / (2.0 * src.k))
        ok = len(per_trial_sin)
        if ok == 0:
            points.append(
                RmsePoint(float(value), math.nan, math.nan, math.nan, failures, cfg.trials)
            )
            continue
        mse_sin = np.asarray(per_trial_sin)
        rmse_sin = math.sqrt(mse_sin.mean())
        rmse_deg = math.sqrt(np.mean(per_trial_deg))
        if ok > 1 and rmse_sin > 0:
            stderr = mse_sin.std(ddof=1) / math.sqrt(ok) / (2.0 * rmse_sin)
        else:
            stderr = 0.0
        points.append(
            RmsePoint(float(value), rmse_sin, rmse_deg, stderr, failures, cfg.trials)
        )
    report = RmseReport(sweep_field=sweep_field, points=tuple(points))
    path = write_csv(
        os.path.join(out_dir, "rmse.csv"),
        [sweep_field, "rmse_sin", "rmse_deg", "stderr_sin", "failures", "trials"],
        [
            [pt.sweep_value, pt.rmse_sin, pt.rmse_deg, pt.stderr_sin, pt.failures, pt.trials]
            for pt in report.points
        ],
    )
    return report, path
