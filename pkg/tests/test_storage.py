from __future__ import annotations

import json
import math

import numpy as np
import pytest

from zerogrowth.models import EvidenceTable, ReportDoc
from zerogrowth.storage.reports import (
    ReportStore,
    nested_tables,
    plain,
    render_csv,
    render_json,
    write_nested_plotdata,
    write_plotdata,
)


def _report() -> ReportDoc:
    return ReportDoc(
        command="cap",
        version="0.1.0",
        config={"nodes": 4096, "tol": 1e-8},
        results={"cap": 0.5, "cloud": "segment"},
        evidence=EvidenceTable(
            columns=["k", "log_diameter"],
            dtypes=["int", "float"],
            rows=[[2, -0.69], [3, -0.8]],
        ),
    )


def test_plain_values():
    assert plain(1 + 2j) == {"re": 1.0, "im": 2.0}
    assert plain(math.inf) == "inf"
    assert plain(-math.inf) == "-inf"
    assert plain(math.nan) == "nan"
    assert plain(np.float64(0.25)) == 0.25
    assert plain(np.int64(3)) == 3
    assert plain(np.bool_(True)) is True
    assert plain(np.array([1.0, 2.0])) == [1.0, 2.0]


def test_plain_keys():
    assert plain({(1, 2.0): 1, 0.5: "a", "x": None}) == {"1,2.0": 1, "0.5": "a", "x": None}


def test_plain_rejects_unknown_objects():
    with pytest.raises(TypeError):
        plain(object())


def test_render_json_is_sorted_and_terminated():
    text = render_json(_report())
    assert text.endswith("}\n")
    payload = json.loads(text)
    assert list(payload) == sorted(payload)
    assert payload["results"]["cap"] == 0.5
    assert payload["format"] == "report-v1"
    assert render_json(_report()) == text


def test_render_csv():
    assert render_csv(_report().evidence).splitlines() == ["k,log_diameter", "2,-0.69", "3,-0.8"]


def test_empty_evidence_keeps_header():
    table = EvidenceTable(columns=["R", "cap"], dtypes=["float", "float"])
    assert render_csv(table).strip() == "R,cap"


def test_evidence_shape_is_checked():
    with pytest.raises(ValueError):
        EvidenceTable(columns=["a", "b"], dtypes=["int"])
    with pytest.raises(ValueError):
        EvidenceTable(columns=["a"], dtypes=["int"], rows=[[1, 2]])


def test_store_writes_json(tmp_path):
    out = tmp_path / "reports" / "cap.json"
    written = ReportStore(out).write(_report())
    assert written == [out]
    assert out.read_text(encoding="utf-8") == render_json(_report())


def test_store_writes_csv_beside_json(tmp_path):
    out = tmp_path / "cap.csv"
    written = ReportStore(out, fmt="csv").write(_report())
    assert written == [out, tmp_path / "cap.json"]
    assert out.read_text(encoding="utf-8").startswith("k,log_diameter")
    assert json.loads((tmp_path / "cap.json").read_text(encoding="utf-8"))["command"] == "cap"


def test_write_plotdata(tmp_path):
    out = tmp_path / "plot" / "cap.csv"
    text = write_plotdata(_report(), out)
    assert out.read_text(encoding="utf-8") == text
    assert write_plotdata(_report(), None) == text


def _staged_report() -> ReportDoc:
    results = {
        "all_passed": True,
        "stages": {
            "hypothesis": {
                "passed": True,
                "rows": [
                    {"re": 1.0, "im": 0.0, "n": 5, "power": 0.5},
                    {"re": 1.0, "im": 0.0, "n": 0, "cauchy_spread": "inf"},
                ],
            },
            "degree": {"passed": False, "rows": [{"n": 1, "k": 1, "degree": 0.0}]},
        },
        "evaluations": [{"z": {"re": 0.5, "im": -1.0}, "overflow": False}],
        "notes": [{"text": "not a number"}],
        "empty": [],
    }
    return _report().model_copy(update={"results": plain(results)})


def test_nested_tables_finds_row_lists():
    tables = nested_tables(_staged_report().results)
    assert set(tables) == {"stages.hypothesis.rows", "stages.degree.rows", "evaluations"}

    hypothesis = tables["stages.hypothesis.rows"]
    assert hypothesis.columns == ["re", "im", "n", "power", "cauchy_spread"]
    assert hypothesis["n"].to_list() == [5, 0]
    assert hypothesis["power"].to_list() == [0.5, None]
    assert hypothesis["cauchy_spread"].to_list()[1] == math.inf

    assert tables["evaluations"].columns == ["z_re", "z_im", "overflow"]
    assert tables["evaluations"]["overflow"].to_list() == [0]


def test_write_nested_plotdata(tmp_path):
    out = tmp_path / "plot" / "series.csv"
    written = write_nested_plotdata(_staged_report(), out)
    names = sorted(path.name for path in written)
    assert names == [
        "series.evaluations.csv",
        "series.stages.degree.rows.csv",
        "series.stages.hypothesis.rows.csv",
    ]
    header = (out.parent / "series.stages.degree.rows.csv").read_text(encoding="utf-8").splitlines()[0]
    assert header == "n,k,degree"
