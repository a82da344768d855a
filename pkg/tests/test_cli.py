from __future__ import annotations

import json

from typer.testing import CliRunner

from zerogrowth.cli import EXIT_INPUT, EXIT_USAGE, app

runner = CliRunner()


def test_run_writes_report(demo_dir, tmp_path):
    out = tmp_path / "seq.json"
    result = runner.invoke(app, ["run", "seq", str(demo_dir / "powers.seqspec.json"), "--out", str(out)])
    assert result.exit_code == 0, result.output
    payload = json.loads(out.read_text(encoding="utf-8"))
    assert payload["command"] == "seq"
    assert payload["format"] == "report-v1"


def test_run_prints_to_stdout_without_out(demo_dir):
    result = runner.invoke(app, ["run", "efun", str(demo_dir / "quadratic.zerodata.json"), "--format", "csv"])
    assert result.exit_code == 0
    assert "R,eta" in result.output


def test_run_is_deterministic(demo_dir, tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    for out in (first, second):
        result = runner.invoke(app, ["run", "cap", str(demo_dir / "segment.cloud.json"), "--out", str(out)])
        assert result.exit_code == 0
    assert first.read_bytes() == second.read_bytes()


def test_csv_format_writes_both_files(demo_dir, tmp_path):
    out = tmp_path / "cap.csv"
    args = ["run", "cap", str(demo_dir / "segment.cloud.json"), "--out", str(out), "--format", "csv"]
    result = runner.invoke(app, args)
    assert result.exit_code == 0
    assert out.read_text(encoding="utf-8").startswith("k,log_diameter")
    assert (tmp_path / "cap.json").exists()


def test_malformed_input_exits_with_input_code(tmp_path):
    bad = tmp_path / "bad.cloud.json"
    bad.write_text('{"points": [{"re": "x"}]}', encoding="utf-8")
    result = runner.invoke(app, ["run", "cap", str(bad), "--out", str(tmp_path / "r.json")])
    assert result.exit_code == EXIT_INPUT
    assert "field" in result.output


def test_invalid_flag_value_exits_with_input_code(demo_dir, tmp_path):
    args = ["run", "efun", str(demo_dir / "quadratic.zerodata.json"), "--nodes", "100"]
    assert runner.invoke(app, args).exit_code == EXIT_INPUT


def test_unknown_command_is_a_usage_error(demo_dir):
    result = runner.invoke(app, ["run", "bogus", str(demo_dir / "powers.seqspec.json")])
    assert result.exit_code == EXIT_USAGE


def test_plotdata(demo_dir, tmp_path):
    report = tmp_path / "cap.json"
    assert runner.invoke(app, ["run", "cap", str(demo_dir / "segment.cloud.json"), "--out", str(report)]).exit_code == 0
    out = tmp_path / "cap_plot.csv"
    result = runner.invoke(app, ["plotdata", str(report), "--out", str(out)])
    assert result.exit_code == 0
    assert out.read_text(encoding="utf-8").splitlines()[0] == "k,log_diameter"


def test_plotdata_rejects_non_reports(demo_dir):
    result = runner.invoke(app, ["plotdata", str(demo_dir / "segment.cloud.json")])
    assert result.exit_code == EXIT_INPUT


def test_doctor():
    result = runner.invoke(app, ["doctor"])
    assert result.exit_code == 0
    payload = json.loads(result.stdout)
    assert "numba" in payload
    assert payload["config"]["nodes"] == 4096


def test_plotdata_writes_nested_tables(demo_dir, tmp_path):
    report = tmp_path / "series.json"
    args = ["run", "series", str(demo_dir / "gaussian.seqspec.json"), "--out", str(report)]
    assert runner.invoke(app, args).exit_code == 0
    out = tmp_path / "series.csv"
    result = runner.invoke(app, ["plotdata", str(report), "--out", str(out), "--nested"])
    assert result.exit_code == 0, result.output
    assert out.read_text(encoding="utf-8").splitlines()[0] == "R,n,p_power,q_power"
    degree = tmp_path / "series.stages.degree.rows.csv"
    assert degree.read_text(encoding="utf-8").splitlines()[0] == "n,k,degree"


def test_nested_plotdata_needs_out(demo_dir):
    result = runner.invoke(app, ["plotdata", str(demo_dir / "segment.cloud.json"), "--nested"])
    assert result.exit_code == EXIT_USAGE


def test_unwritable_plotdata_path(demo_dir, tmp_path):
    report = tmp_path / "cap.json"
    assert runner.invoke(app, ["run", "cap", str(demo_dir / "segment.cloud.json"), "--out", str(report)]).exit_code == 0
    blocker = tmp_path / "blocker"
    blocker.write_text("", encoding="utf-8")
    result = runner.invoke(app, ["plotdata", str(report), "--out", str(blocker / "cap.csv")])
    assert result.exit_code == EXIT_INPUT
    assert "cannot write" in result.output


def test_unwritable_report_path(demo_dir, tmp_path):
    blocker = tmp_path / "blocker"
    blocker.write_text("", encoding="utf-8")
    args = ["run", "cap", str(demo_dir / "segment.cloud.json"), "--out", str(blocker / "cap.json")]
    result = runner.invoke(app, args)
    assert result.exit_code == EXIT_INPUT
    assert "cannot write" in result.output
