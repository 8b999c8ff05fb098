"""Scenario configuration: JSON schema, validation, and source generation.

A scenario file is a single JSON object.  Unknown fields anywhere are
rejected so typos cannot silently change an experiment.

    {
      "geometry": {"kind": "coprime", "m": 2, "n": 5},
      "sources": {"count": 10,
                  "sin_phi_interval": [-0.45, 0.45],
                  "sin_theta_interval": [-0.1, 0.1],
                  "pairing": "joint-increasing"},
      "snr_db": 0.0,
      "snapshots": 1000,
      "seed": 1234
    }

``geometry.kind`` is "coprime" (fields m, n) or "nested" (fields n1, n2, or a
single n for an even split).  ``sources`` is either a generator spec as above
(pairing "joint-increasing" or an explicit permutation of the sin-theta grid,
optional "powers") or an explicit list of {"sin_theta", "sin_phi", "power"}
objects.  ``snr_db`` accepts the string "inf" for noiseless runs.  Optional
fields: grid_points, trials, snr_sweep, snapshot_sweep.
"""

import json
import math
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np

from .errors import ConfigError, GeometryError
from .geometry import VShapedGeometry, build_vshaped, max_resolvable
from .signals import SourceSet

_TOP_FIELDS = {
    "geometry",
    "sources",
    "snr_db",
    "snapshots",
    "seed",
    "grid_points",
    "trials",
    "snr_sweep",
    "snapshot_sweep",
}
_GEOMETRY_FIELDS = {"kind", "m", "n", "n1", "n2"}
_GENERATOR_FIELDS = {"count", "sin_phi_interval", "sin_theta_interval", "pairing", "powers"}
_SOURCE_FIELDS = {"sin_theta", "sin_phi", "power"}


def _reject_unknown(d: dict, allowed: set, where: str):
    unknown = sorted(set(d) - allowed)
    if unknown:
        raise ConfigError(f"unknown field(s) in {where}: {', '.join(unknown)}")


def _require(d: dict, name: str, where: str):
    if name not in d:
        raise ConfigError(f"missing field {name!r} in {where}")
    return d[name]


@dataclass(frozen=True)
class SourceGenerator:
    """Equally spaced source generator over sin-domain intervals."""

    count: int
    sin_phi_interval: Tuple[float, float]
    sin_theta_interval: Tuple[float, float]
    pairing: Union[str, Tuple[int, ...]] = "joint-increasing"
    powers: Tuple[float, ...] = None

    def build(self) -> SourceSet:
        k = self.count
        if k < 1:
            raise ConfigError("source count must be >= 1")
        sin_phi = np.linspace(*self.sin_phi_interval, k)
        theta_grid = np.linspace(*self.sin_theta_interval, k)
        if self.pairing == "joint-increasing":
            sin_theta = theta_grid
        else:
            perm = np.asarray(self.pairing, dtype=int)
            if sorted(perm.tolist()) != list(range(k)):
                raise ConfigError(
                    f"pairing must be 'joint-increasing' or a permutation of 0..{k - 1}"
                )
            sin_theta = theta_grid[perm]
        powers = np.ones(k) if self.powers is None else np.asarray(self.powers, float)
        if powers.size == 1:
            powers = np.full(k, float(powers))
        if powers.size != k:
            raise ConfigError(f"powers must have length {k} (or be scalar)")
        return SourceSet(sin_theta=sin_theta, sin_phi=sin_phi, power=powers)


@dataclass(frozen=True)
class ScenarioConfig:
    """Validated scenario: geometry, sources, operating point, run controls."""

    geometry_kind: str
    geometry_params: Tuple[int, ...]
    sources: Union[SourceSet, SourceGenerator]
    snr_db: float
    snapshots: int
    seed: int
    grid_points: int = 4001
    trials: int = 1
    snr_sweep: Optional[Tuple[float, ...]] = None
    snapshot_sweep: Optional[Tuple[int, ...]] = None

    def build_geometry(self) -> VShapedGeometry:
        try:
            return build_vshaped(self.geometry_kind, self.geometry_params)
        except GeometryError as exc:
            raise ConfigError(f"geometry: {exc}") from exc

    def build_sources(self, geom: VShapedGeometry) -> SourceSet:
        src = self.sources.build() if isinstance(self.sources, SourceGenerator) else self.sources
        limit = max_resolvable(geom.kind, geom.params)
        if src.k > limit:
            raise ConfigError(
                f"K={src.k} exceeds the resolvable limit {limit} of {geom.kind}{geom.params}"
            )
        src.validate_for(geom.omega)
        return src


def _parse_snr(value, where: str) -> float:
    if isinstance(value, str):
        if value.lower() in ("inf", "+inf", "infinity"):
            return math.inf
        raise ConfigError(f"{where}: bad SNR string {value!r} (use a number or 'inf')")
    snr = float(value)
    if math.isnan(snr):
        raise ConfigError(f"{where}: SNR is NaN")
    return snr


def _parse_interval(value, where: str) -> Tuple[float, float]:
    try:
        lo, hi = (float(x) for x in value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{where}: expected [low, high]") from exc
    return lo, hi


def _parse_geometry(d, where="geometry") -> Tuple[str, Tuple[int, ...]]:
    if not isinstance(d, dict):
        raise ConfigError(f"{where} must be an object")
    _reject_unknown(d, _GEOMETRY_FIELDS, where)
    kind = _require(d, "kind", where)
    if kind == "coprime":
        params = (int(_require(d, "m", where)), int(_require(d, "n", where)))
        extra = set(d) & {"n1", "n2"}
    elif kind == "nested":
        if "n1" in d or "n2" in d:
            params = (int(_require(d, "n1", where)), int(_require(d, "n2", where)))
        else:
            params = (int(_require(d, "n", where)),)
        extra = set(d) & {"m"} | (set(d) & {"n"} if len(params) == 2 else set())
    else:
        raise ConfigError(f"{where}.kind must be 'coprime' or 'nested', got {kind!r}")
    if extra:
        raise ConfigError(f"{where}: field(s) {sorted(extra)} do not apply to kind {kind!r}")
    return kind, params


def _parse_sources(value, where="sources"):
    if isinstance(value, list):
        sin_theta, sin_phi, power = [], [], []
        for i, entry in enumerate(value):
            if not isinstance(entry, dict):
                raise ConfigError(f"{where}[{i}] must be an object")
            _reject_unknown(entry, _SOURCE_FIELDS, f"{where}[{i}]")
            sin_theta.append(float(_require(entry, "sin_theta", f"{where}[{i}]")))
            sin_phi.append(float(_require(entry, "sin_phi", f"{where}[{i}]")))
            power.append(float(entry.get("power", 1.0)))
        return SourceSet(
            sin_theta=np.asarray(sin_theta),
            sin_phi=np.asarray(sin_phi),
            power=np.asarray(power),
        )
    if isinstance(value, dict):
        _reject_unknown(value, _GENERATOR_FIELDS, where)
        pairing = value.get("pairing", "joint-increasing")
        if isinstance(pairing, list):
            pairing = tuple(int(x) for x in pairing)
        elif pairing != "joint-increasing":
            raise ConfigError(
                f"{where}.pairing must be 'joint-increasing' or a permutation list"
            )
        powers = value.get("powers")
        if powers is not None:
            powers = tuple(float(x) for x in np.atleast_1d(powers))
        return SourceGenerator(
            count=int(_require(value, "count", where)),
            sin_phi_interval=_parse_interval(
                _require(value, "sin_phi_interval", where), f"{where}.sin_phi_interval"
            ),
            sin_theta_interval=_parse_interval(
                _require(value, "sin_theta_interval", where),
                f"{where}.sin_theta_interval",
            ),
            pairing=pairing,
            powers=powers,
        )
    raise ConfigError(f"{where} must be a list of sources or a generator object")


def config_from_dict(d: dict) -> ScenarioConfig:
    if not isinstance(d, dict):
        raise ConfigError("configuration root must be a JSON object")
    _reject_unknown(d, _TOP_FIELDS, "configuration")
    kind, params = _parse_geometry(_require(d, "geometry", "configuration"))
    sources = _parse_sources(_require(d, "sources", "configuration"))
    snr_db = _parse_snr(_require(d, "snr_db", "configuration"), "snr_db")
    snapshots = int(_require(d, "snapshots", "configuration"))
    if snapshots < 1:
        raise ConfigError("snapshots must be >= 1")
    seed = int(_require(d, "seed", "configuration"))
    grid_points = int(d.get("grid_points", 4001))
    if grid_points < 5:
        raise ConfigError("grid_points must be >= 5")
    trials = int(d.get("trials", 1))
    if trials < 1:
        raise ConfigError("trials must be >= 1")
    snr_sweep = d.get("snr_sweep")
    if snr_sweep is not None:
        snr_sweep = tuple(_parse_snr(x, "snr_sweep") for x in snr_sweep)
        if not snr_sweep:
            raise ConfigError("snr_sweep must be non-empty when present")
    snapshot_sweep = d.get("snapshot_sweep")
    if snapshot_sweep is not None:
        snapshot_sweep = tuple(int(x) for x in snapshot_sweep)
        if not snapshot_sweep or any(t < 1 for t in snapshot_sweep):
            raise ConfigError("snapshot_sweep must be non-empty positive counts")
    cfg = ScenarioConfig(
        geometry_kind=kind,
        geometry_params=params,
        sources=sources,
        snr_db=snr_db,
        snapshots=snapshots,
        seed=seed,
        grid_points=grid_points,
        trials=trials,
        snr_sweep=snr_sweep,
        snapshot_sweep=snapshot_sweep,
    )
    # fail fast on geometry/source incompatibilities
    geom = cfg.build_geometry()
    cfg.build_sources(geom)
    return cfg


def load_config(path) -> ScenarioConfig:
    """Parse and validate a scenario JSON file."""
    try:
        with open(path, encoding="utf-8") as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read configuration {path}: {exc}") from exc
    return config_from_dict(data)
