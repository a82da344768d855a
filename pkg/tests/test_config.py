from __future__ import annotations

import pytest

from zerogrowth.common.config import RunConfig, load_config
from zerogrowth.common.errors import InputError


def test_defaults():
    cfg = load_config()
    assert cfg == RunConfig()
    assert cfg.nodes == 4096
    assert cfg.tol == 1e-8
    assert cfg.format == "json"
    assert cfg.out_path is None


def test_overrides_skip_unset_flags():
    cfg = load_config(overrides={"nodes": 256, "tol": None, "format": "csv"})
    assert cfg.nodes == 256
    assert cfg.tol == 1e-8
    assert cfg.format == "csv"


def test_environment_sits_below_flags(monkeypatch):
    monkeypatch.setenv("ZEROGROWTH_NODES", "512")
    monkeypatch.setenv("ZEROGROWTH_SEED", "7")
    cfg = load_config(overrides={"nodes": 1024})
    assert cfg.nodes == 1024
    assert cfg.seed == 7


def test_config_file_wins_over_flags(tmp_path):
    path = tmp_path / "zerogrowth.toml"
    path.write_text("[run]\nnodes = 128\nradii = [3.0, 1.0]\n", encoding="utf-8")
    cfg = load_config(path, overrides={"nodes": 1024, "tol": 1e-6})
    assert cfg.nodes == 128
    assert cfg.tol == 1e-6
    assert cfg.radii == [1.0, 3.0]


def test_json_config_file(tmp_path):
    path = tmp_path / "run.json"
    path.write_text('{"capacity_points": 16, "depth_max": 6}', encoding="utf-8")
    cfg = load_config(path)
    assert (cfg.capacity_points, cfg.depth_max) == (16, 6)


@pytest.mark.parametrize(
    ("overrides", "field"),
    [
        ({"nodes": 100}, "nodes"),
        ({"nodes": 32}, "nodes"),
        ({"tol": 0.0}, "tol"),
        ({"window_fraction": 1.5}, "window_fraction"),
        ({"format": "xml"}, "format"),
        ({"radii": []}, "radii"),
        ({"capacity_points": 1}, "capacity_points"),
        ({"bogus": 1}, "bogus"),
    ],
)
def test_invalid_values_name_the_field(overrides, field):
    with pytest.raises(InputError) as info:
        load_config(overrides=overrides)
    assert info.value.field == field


def test_missing_config_file(tmp_path):
    with pytest.raises(InputError) as info:
        load_config(tmp_path / "absent.toml")
    assert info.value.field == "config"


def test_unparseable_config_file(tmp_path):
    path = tmp_path / "broken.toml"
    path.write_text("nodes = = 3\n", encoding="utf-8")
    with pytest.raises(InputError) as info:
        load_config(path)
    assert info.value.field == "config"
