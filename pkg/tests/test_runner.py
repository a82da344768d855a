from __future__ import annotations

import json
import math

import pytest

from zerogrowth.common.config import RunConfig
from zerogrowth.common.errors import InputError, ParameterError
from zerogrowth.runner import COMMANDS, run_command


@pytest.fixture
def cfg() -> RunConfig:
    return RunConfig(nodes=1024)


@pytest.mark.parametrize(
    ("command", "document"),
    [
        ("efun", "quadratic.zerodata.json"),
        ("efun", "lattice.zerodata.json"),
        ("growth", "quadratic.zerodata.json"),
        ("seq", "powers.seqspec.json"),
        ("cap", "segment.cloud.json"),
        ("cap", "circles.cloudfamily.json"),
        ("cap", "ray.annuli.json"),
        ("laplace", "ramp.kernel.json"),
        ("series", "gaussian.seqspec.json"),
    ],
)
def test_demo_reports(demo_dir, cfg, command, document):
    report = run_command(command, demo_dir / document, cfg)
    assert report.command == command
    assert report.evidence.columns
    assert "out_path" not in report.config
    assert report.config["nodes"] == 1024


def test_efun_report_counts_zeros(demo_dir, cfg):
    report = run_command("efun", demo_dir / "quadratic.zerodata.json", cfg)
    assert report.evidence.rows == [[0.5, 0], [1.0, 1], [2.0, 1]]
    assert report.results["hadamard_degree"] == pytest.approx(1.0 / 0.8 + 2.0 / abs(2.5 + 1.0j))


def test_efun_report_reads_high_degree_polynomial_as_order_zero(tmp_path, cfg):
    zeros = [{"re": 2.0 * math.cos(0.37 * k), "im": 2.0 * math.sin(0.37 * k)} for k in range(40)]
    path = tmp_path / "forty.zerodata.json"
    path.write_text(json.dumps({"zeros": zeros}), encoding="utf-8")
    order = run_command("efun", path, cfg).results["order"]
    assert order["polynomial"] is True
    assert order["rho"] == 0.0
    assert order["degree"] == 40


def test_growth_report_matches_jensen(demo_dir, cfg):
    report = run_command("growth", demo_dir / "quadratic.zerodata.json", cfg)
    for R, log_mean, rhs, _, eta, winding in report.evidence.rows:
        assert log_mean == pytest.approx(rhs, abs=1e-8)
        assert eta == winding


def test_laplace_report_for_box_kernel(demo_dir, cfg):
    report = run_command("laplace", demo_dir / "box.kernel.json", cfg)
    assert len(report.evidence.rows) == 6
    assert report.results["moment_identity"]["residual"] < 1e-10
    assert report.results["obstruction"]["rows"]


def test_series_report(demo_dir, cfg):
    report = run_command("series", demo_dir / "gaussian.seqspec.json", cfg)
    assert report.results["all_passed"] is True
    assert report.results["samples_sufficient"] is False
    assert report.results["region"]["radius"] == pytest.approx(1.0)


def test_series_needs_series_block(demo_dir, cfg):
    with pytest.raises(InputError) as info:
        run_command("series", demo_dir / "powers.seqspec.json", cfg)
    assert info.value.field == "series"


def test_unknown_command(demo_dir, cfg):
    assert set(COMMANDS) == {"efun", "growth", "seq", "cap", "laplace", "series"}
    with pytest.raises(ParameterError):
        run_command("bogus", demo_dir / "powers.seqspec.json", cfg)
