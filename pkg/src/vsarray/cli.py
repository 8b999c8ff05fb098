"""Command-line interface.

Subcommands:
    geometry   sensor-count / resolvability table (built-in rows or --config)
    simulate   write seeded snapshot matrices of both portions to .npz
    estimate   single-scenario estimation with CSV artifacts
    rmse       Monte Carlo RMSE sweep with CSV artifact

Exit codes: 0 success, 2 configuration error, 3 estimation failure.
"""

import argparse
import dataclasses
import json
import os
import sys

import numpy as np

from .config import load_config
from .errors import ConfigError, ContractViolation, EstimationError, GeometryError
from .experiments import _geometry_summary, run_rmse, run_scenario, write_geometry_report
from .signals import simulate_snapshots


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vsarray",
        description="V-shaped sparse arrays for underdetermined 2-D DOA estimation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=".", help="output directory (default: cwd)")

    geo = sub.add_parser("geometry", parents=[common], help="geometry report CSV")
    geo.add_argument(
        "--config",
        help="optional JSON file with {\"rows\": [{\"kind\": ..., ...}, ...]}",
    )

    for name, text in (
        ("simulate", "simulate snapshots and save them to snapshots.npz"),
        ("estimate", "run a scenario and write estimates/spectra CSVs"),
        ("rmse", "run a Monte Carlo RMSE sweep and write rmse.csv"),
    ):
        cmd = sub.add_parser(name, parents=[common], help=text)
        cmd.add_argument("--config", required=True, help="scenario JSON file")
        cmd.add_argument("--seed", type=int, help="override the configured seed")
        cmd.add_argument("--grid", type=int, help="override the configured grid points")
    return parser


def _load_scenario(args):
    cfg = load_config(args.config)
    overrides = {}
    if getattr(args, "seed", None) is not None:
        overrides["seed"] = args.seed
    if getattr(args, "grid", None) is not None:
        if args.grid < 5:
            raise ConfigError("grid override must be >= 5")
        overrides["grid_points"] = args.grid
    return dataclasses.replace(cfg, **overrides) if overrides else cfg


def _geometry_rows(path):
    if path is None:
        return None
    try:
        with open(path, encoding="utf-8") as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read geometry rows {path}: {exc}") from exc
    if not isinstance(data, dict) or set(data) != {"rows"}:
        raise ConfigError("geometry config must be an object with a single 'rows' list")
    rows = []
    for i, row in enumerate(data["rows"]):
        if not isinstance(row, dict) or "kind" not in row:
            raise ConfigError(f"rows[{i}] must be an object with a 'kind'")
        kind = row["kind"]
        if kind == "coprime":
            extra = set(row) - {"kind", "m", "n"}
            params = (row.get("m"), row.get("n"))
        else:
            extra = set(row) - {"kind", "n", "n1", "n2"}
            params = (
                (row["n1"], row["n2"]) if "n1" in row or "n2" in row else (row.get("n"),)
            )
        if extra:
            raise ConfigError(f"rows[{i}]: unknown field(s) {sorted(extra)}")
        if any(v is None for v in params):
            raise ConfigError(f"rows[{i}]: missing geometry parameters")
        rows.append((kind, tuple(int(v) for v in params)))
    return rows


def _cmd_geometry(args) -> int:
    path = write_geometry_report(args.out, _geometry_rows(args.config))
    print(f"wrote {path}")
    return 0


def _cmd_simulate(args) -> int:
    cfg = _load_scenario(args)
    geom = cfg.build_geometry()
    src = cfg.build_sources(geom)
    u, v = simulate_snapshots(geom, src, cfg.snr_db, cfg.snapshots, cfg.seed)
    path = os.path.join(args.out, "snapshots.npz")
    np.savez(
        path,
        u=u.data,
        v=v.data,
        positions=geom.portion_u,
        omega=geom.omega,
        noise_variance=u.noise_variance,
        seed=cfg.seed,
    )
    print(f"wrote {path} ({u.sensors} sensors x {u.snapshots} snapshots per portion)")
    return 0


def _cmd_estimate(args) -> int:
    cfg = _load_scenario(args)
    print(_geometry_summary(cfg.build_geometry()))
    _, paths = run_scenario(cfg, args.out)
    for p in paths:
        print(f"wrote {p}")
    return 0


def _cmd_rmse(args) -> int:
    cfg = _load_scenario(args)
    print(_geometry_summary(cfg.build_geometry()))
    report, path = run_rmse(cfg, args.out)
    for pt in report.points:
        rmse = "failed" if np.isnan(pt.rmse_sin) else f"{pt.rmse_sin:.6g}"
        print(
            f"{report.sweep_field} = {pt.sweep_value:g}: rmse_sin = {rmse} "
            f"({pt.failures}/{pt.trials} failed trials)"
        )
    print(f"wrote {path}")
    return 0


_COMMANDS = {
    "geometry": _cmd_geometry,
    "simulate": _cmd_simulate,
    "estimate": _cmd_estimate,
    "rmse": _cmd_rmse,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        os.makedirs(args.out, exist_ok=True)
        return _COMMANDS[args.command](args)
    except (ConfigError, GeometryError, ContractViolation) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except EstimationError as exc:
        print(f"estimation failed ({exc.stage}): {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
