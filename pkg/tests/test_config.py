import json
import math

import numpy as np
import pytest

from vsarray.config import config_from_dict, load_config
from vsarray.errors import ConfigError


def base_config(**overrides):
    cfg = {
        "geometry": {"kind": "coprime", "m": 2, "n": 5},
        "sources": [
            {"sin_theta": -0.3, "sin_phi": 0.2, "power": 1.0},
            {"sin_theta": 0.4, "sin_phi": -0.1, "power": 2.0},
        ],
        "snr_db": 0,
        "snapshots": 100,
        "seed": 1,
    }
    cfg.update(overrides)
    return cfg


def test_valid_config_round_trip():
    cfg = config_from_dict(base_config())
    geom = cfg.build_geometry()
    assert geom.total_sensors == 15
    src = cfg.build_sources(geom)
    assert src.k == 2
    assert np.allclose(src.power, [1.0, 2.0])
    assert cfg.grid_points == 4001 and cfg.trials == 1


def test_nested_geometry_forms():
    cfg = config_from_dict(
        base_config(geometry={"kind": "nested", "n1": 2, "n2": 3})
    )
    assert cfg.build_geometry().portion_size == 5
    cfg = config_from_dict(base_config(geometry={"kind": "nested", "n": 6}))
    assert cfg.build_geometry().total_sensors == 12


def test_unknown_fields_rejected_everywhere():
    with pytest.raises(ConfigError, match="bogus"):
        config_from_dict(base_config(bogus=1))
    with pytest.raises(ConfigError, match="radius"):
        config_from_dict(
            base_config(geometry={"kind": "coprime", "m": 2, "n": 5, "radius": 3})
        )
    bad_source = base_config()
    bad_source["sources"][0]["color"] = "red"
    with pytest.raises(ConfigError, match="color"):
        config_from_dict(bad_source)
    with pytest.raises(ConfigError, match="shape"):
        config_from_dict(
            base_config(
                sources={
                    "count": 3,
                    "sin_phi_interval": [-0.4, 0.4],
                    "sin_theta_interval": [-0.1, 0.1],
                    "shape": "ring",
                }
            )
        )


def test_missing_fields_rejected():
    for field in ("geometry", "sources", "snr_db", "snapshots", "seed"):
        cfg = base_config()
        del cfg[field]
        with pytest.raises(ConfigError, match=field):
            config_from_dict(cfg)


def test_snr_parsing():
    assert math.isinf(config_from_dict(base_config(snr_db="inf")).snr_db)
    with pytest.raises(ConfigError):
        config_from_dict(base_config(snr_db=float("nan")))
    with pytest.raises(ConfigError):
        config_from_dict(base_config(snr_db="loud"))


def test_source_count_limit():
    gen = {
        "count": 11,
        "sin_phi_interval": [-0.45, 0.45],
        "sin_theta_interval": [-0.1, 0.1],
    }
    with pytest.raises(ConfigError, match="resolvable"):
        config_from_dict(base_config(sources=gen))
    gen["count"] = 10
    cfg = config_from_dict(base_config(sources=gen))
    assert cfg.build_sources(cfg.build_geometry()).k == 10


def test_generator_pairing_orders():
    gen = {
        "count": 4,
        "sin_phi_interval": [-0.1, 0.1],
        "sin_theta_interval": [-0.4, 0.4],
        "pairing": "joint-increasing",
    }
    cfg = config_from_dict(base_config(sources=gen))
    src = cfg.build_sources(cfg.build_geometry())
    assert np.all(np.diff(src.sin_theta) > 0)
    assert np.all(np.diff(src.sin_phi) > 0)

    gen["pairing"] = [1, 0, 3, 2]
    cfg = config_from_dict(base_config(sources=gen))
    permuted = cfg.build_sources(cfg.build_geometry())
    assert np.allclose(np.sort(permuted.sin_theta), np.sort(src.sin_theta))
    assert not np.array_equal(permuted.sin_theta, src.sin_theta)

    gen["pairing"] = [0, 0, 1, 2]
    with pytest.raises(ConfigError):
        config_from_dict(base_config(sources=gen))


def test_generator_powers():
    gen = {
        "count": 3,
        "sin_phi_interval": [-0.3, 0.3],
        "sin_theta_interval": [-0.3, 0.3],
        "powers": [1.0, 0.5, 0.25],
    }
    cfg = config_from_dict(base_config(sources=gen))
    src = cfg.build_sources(cfg.build_geometry())
    assert np.allclose(src.power, [1.0, 0.5, 0.25])


def test_aliasing_rejected_at_config_time():
    bad = base_config(
        sources=[{"sin_theta": 0.99, "sin_phi": -0.9, "power": 1.0}]
    )
    with pytest.raises(ConfigError):
        config_from_dict(bad)


def test_sweep_validation():
    cfg = config_from_dict(base_config(snr_sweep=[-10, 0, 10], trials=5))
    assert cfg.snr_sweep == (-10.0, 0.0, 10.0)
    with pytest.raises(ConfigError):
        config_from_dict(base_config(snr_sweep=[]))
    with pytest.raises(ConfigError):
        config_from_dict(base_config(snapshot_sweep=[100, 0]))
    with pytest.raises(ConfigError):
        config_from_dict(base_config(trials=0))


def test_load_config_errors(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ConfigError):
        load_config(bad)
    good = tmp_path / "good.json"
    good.write_text(json.dumps(base_config()))
    assert load_config(good).snapshots == 100
