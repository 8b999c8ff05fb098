import json

import pytest

from vsarray.cli import main


def write_json(path, data):
    path.write_text(json.dumps(data))
    return str(path)


def scenario_dict(**overrides):
    cfg = {
        "geometry": {"kind": "coprime", "m": 2, "n": 5},
        "sources": [
            {"sin_theta": -0.3, "sin_phi": 0.2, "power": 1.0},
            {"sin_theta": 0.4, "sin_phi": -0.1, "power": 1.0},
        ],
        "snr_db": 10,
        "snapshots": 200,
        "seed": 7,
    }
    cfg.update(overrides)
    return cfg


def test_geometry_default(tmp_path, capsys):
    assert main(["geometry", "--out", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert "geometry.csv" in out
    header = (tmp_path / "geometry.csv").read_text().splitlines()[0]
    assert header.startswith("kind,params,sensors")


def test_geometry_custom_rows(tmp_path):
    rows = write_json(
        tmp_path / "rows.json",
        {"rows": [{"kind": "coprime", "m": 2, "n": 5}, {"kind": "nested", "n": 6}]},
    )
    assert main(["geometry", "--config", rows, "--out", str(tmp_path)]) == 0
    lines = (tmp_path / "geometry.csv").read_text().splitlines()
    assert len(lines) == 3

    bad = write_json(tmp_path / "bad_rows.json", {"rows": [{"kind": "coprime", "m": 2}]})
    assert main(["geometry", "--config", bad, "--out", str(tmp_path)]) == 2


def test_simulate(tmp_path):
    cfg = write_json(tmp_path / "s.json", scenario_dict())
    assert main(["simulate", "--config", cfg, "--out", str(tmp_path)]) == 0
    import numpy as np

    blob = np.load(tmp_path / "snapshots.npz")
    assert blob["u"].shape == (8, 200)
    assert blob["v"].shape == (8, 200)


def test_estimate_success(tmp_path, capsys):
    cfg = write_json(tmp_path / "s.json", scenario_dict())
    assert main(["estimate", "--config", cfg, "--out", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert "53.2856" in out  # geometry summary states the V-angle in degrees
    assert (tmp_path / "estimates.csv").exists()
    assert (tmp_path / "spectra.csv").exists()


def test_estimate_config_error(tmp_path, capsys):
    cfg = write_json(tmp_path / "s.json", scenario_dict(bogus=True))
    assert main(["estimate", "--config", cfg, "--out", str(tmp_path)]) == 2
    assert "configuration error" in capsys.readouterr().err

    assert main(["estimate", "--config", str(tmp_path / "nope.json"), "--out", str(tmp_path)]) == 2


def test_estimate_estimation_failure(tmp_path, capsys):
    gen = {
        "count": 10,
        "sin_phi_interval": [-0.45, 0.45],
        "sin_theta_interval": [-0.1, 0.1],
    }
    cfg = write_json(
        tmp_path / "s.json",
        scenario_dict(sources=gen, snapshots=3, snr_db=-20, seed=0),
    )
    assert main(["estimate", "--config", cfg, "--out", str(tmp_path)]) == 3
    assert "estimation failed" in capsys.readouterr().err


def test_seed_and_grid_overrides(tmp_path):
    cfg = write_json(tmp_path / "s.json", scenario_dict())
    a, b, c = tmp_path / "a", tmp_path / "b", tmp_path / "c"
    assert main(["estimate", "--config", cfg, "--out", str(a)]) == 0
    assert main(["estimate", "--config", cfg, "--out", str(b), "--seed", "8"]) == 0
    assert main(["estimate", "--config", cfg, "--out", str(c), "--grid", "2001"]) == 0
    base = (a / "estimates.csv").read_bytes()
    assert base != (b / "estimates.csv").read_bytes()
    assert len((c / "spectra.csv").read_text().splitlines()) == 2002
    assert main(["estimate", "--config", cfg, "--out", str(tmp_path), "--grid", "2"]) == 2


def test_rmse_command(tmp_path, capsys):
    cfg = write_json(
        tmp_path / "s.json", scenario_dict(trials=3, snr_sweep=[0, 10])
    )
    assert main(["rmse", "--config", cfg, "--out", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert "rmse.csv" in out
    lines = (tmp_path / "rmse.csv").read_text().splitlines()
    assert len(lines) == 3

    no_sweep = write_json(tmp_path / "n.json", scenario_dict(trials=3))
    assert main(["rmse", "--config", no_sweep, "--out", str(tmp_path)]) == 2
