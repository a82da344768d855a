from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import pytest

from zerogrowth.common.errors import InputError
from zerogrowth.efun import FiniteOrderFunction
from zerogrowth.models import AnnuliDoc, CloudDoc, CloudFamilyDoc, KernelDoc
from zerogrowth.parser.documents import (
    function_document,
    load_cap_doc,
    load_function_doc,
    load_kernel_doc,
    load_seqspec_doc,
    to_annuli,
    to_family,
    to_function,
    to_kernel,
    to_sequence,
)


def _write(tmp_path: Path, name: str, payload: Any) -> Path:
    path = tmp_path / name
    path.write_text(payload if isinstance(payload, str) else json.dumps(payload), encoding="utf-8")
    return path


def test_demo_documents_load(demo_dir):
    f = to_function(load_function_doc(demo_dir / "quadratic.zerodata.json"))
    assert f.total_multiplicity == 3
    assert isinstance(load_cap_doc(demo_dir / "segment.cloud.json"), CloudDoc)
    assert isinstance(load_cap_doc(demo_dir / "circles.cloudfamily.json"), CloudFamilyDoc)
    assert isinstance(load_cap_doc(demo_dir / "ray.annuli.json"), AnnuliDoc)
    assert isinstance(load_kernel_doc(demo_dir / "box.kernel.json"), KernelDoc)

    spec = to_sequence(load_seqspec_doc(demo_dir / "powers.seqspec.json"))
    assert spec.N == 10
    assert spec.k == tuple(float(n) for n in range(1, 11))


def test_malformed_json_names_the_line(tmp_path):
    path = _write(tmp_path, "bad.json", '{\n  "zeros": [\n')
    with pytest.raises(InputError) as info:
        load_function_doc(path)
    assert info.value.field.startswith("line ")


def test_missing_file(tmp_path):
    with pytest.raises(InputError) as info:
        load_function_doc(tmp_path / "absent.json")
    assert info.value.field == "input"


def test_unknown_field_is_rejected(tmp_path):
    path = _write(tmp_path, "f.json", {"zeros": [{"re": 1.0, "weight": 2}]})
    with pytest.raises(InputError) as info:
        load_function_doc(path)
    assert info.value.field == "zeros.0.weight"


def test_bad_multiplicity(tmp_path):
    path = _write(tmp_path, "f.json", {"zeros": [{"re": 1.0, "mult": 0}]})
    with pytest.raises(InputError) as info:
        load_function_doc(path)
    assert info.value.field == "zeros.0.mult"


def test_domain_errors_become_input_errors(tmp_path):
    path = _write(tmp_path, "f.json", {"genus": 0, "expoly": [{"re": 1.0}]})
    with pytest.raises(InputError) as info:
        to_function(load_function_doc(path))
    assert info.value.field == "function"


def test_seqspec_needs_normalizers(tmp_path):
    path = _write(tmp_path, "s.json", {"members": [{}], "R_grid": [1.0]})
    with pytest.raises(InputError):
        load_seqspec_doc(path)


def test_seqspec_member_errors_name_the_member(tmp_path):
    path = _write(
        tmp_path,
        "s.json",
        {"members": [{}, {"leading": {"re": 0.0}}], "k": [1, 2], "R_grid": [1.0]},
    )
    with pytest.raises(InputError) as info:
        to_sequence(load_seqspec_doc(path))
    assert info.value.field == "members.1"


def test_cap_kind_is_inferred(tmp_path):
    cloud = _write(tmp_path, "c.json", {"points": [{"re": 0.0}, {"re": 1.0}]})
    family = _write(tmp_path, "f.json", {"members": [{"R": 2.0, "points": [{"re": 1.0}]}]})
    annuli = _write(tmp_path, "a.json", {"depths": [{"depth": 1, "points": [{"re": 3.0}]}]})
    assert isinstance(load_cap_doc(cloud), CloudDoc)
    assert isinstance(load_cap_doc(family), CloudFamilyDoc)
    assert isinstance(load_cap_doc(annuli), AnnuliDoc)


def test_duplicate_family_radius(tmp_path):
    path = _write(
        tmp_path,
        "f.json",
        {"members": [{"R": 2.0, "points": [{"re": 1.0}]}, {"R": 2.0, "points": []}]},
    )
    with pytest.raises(InputError) as info:
        to_family(load_cap_doc(path))
    assert info.value.field == "members.1.R"


def test_empty_family_member_is_kept_as_none(tmp_path):
    path = _write(tmp_path, "f.json", {"members": [{"R": 4.0, "points": []}]})
    assert to_family(load_cap_doc(path)) == {4.0: None}


def test_duplicate_annulus_depth(tmp_path):
    path = _write(tmp_path, "a.json", {"depths": [{"depth": 2}, {"depth": 2}]})
    with pytest.raises(InputError) as info:
        to_annuli(load_cap_doc(path))
    assert info.value.field == "depths.1.depth"


def test_kernel_documents(tmp_path):
    incomplete = _write(tmp_path, "k.json", {"type": "samples", "t": [0.0, 1.0]})
    with pytest.raises(InputError):
        load_kernel_doc(incomplete)

    unsorted = _write(tmp_path, "u.json", {"type": "piecewise_const", "breaks": [0.0, 2.0, 1.0], "values": [1.0, 1.0]})
    with pytest.raises(InputError) as info:
        to_kernel(load_kernel_doc(unsorted))
    assert info.value.field == "breaks"


def test_function_document_inverts_to_function():
    f = FiniteOrderFunction.from_roots([1.0, 2.0 + 1.0j], leading=2.0)
    assert to_function(function_document(f)) == f


@pytest.mark.parametrize(
    ("text", "field"),
    [
        ('{"zeros": [{"re": NaN, "im": 0.0}]}', "zeros.0.re"),
        ('{"leading": {"re": 1.0, "im": Infinity}}', "leading.im"),
        ('{"genus": 1, "expoly": [{"re": -Infinity}]}', "expoly.0.re"),
    ],
)
def test_non_finite_numbers_are_rejected(tmp_path, text, field):
    path = _write(tmp_path, "f.json", text)
    with pytest.raises(InputError) as info:
        load_function_doc(path)
    assert info.value.field == field


def test_non_finite_cloud_points_are_rejected(tmp_path):
    path = _write(tmp_path, "c.cloud.json", '{"points": [{"re": 1.0}, {"re": NaN}]}')
    with pytest.raises(InputError) as info:
        load_cap_doc(path)
    assert info.value.field.endswith("points.1.re")


def test_non_finite_kernel_values_are_rejected(tmp_path):
    text = '{"type": "piecewise_const", "breaks": [0.0, 1.0], "values": [Infinity]}'
    with pytest.raises(InputError) as info:
        load_kernel_doc(_write(tmp_path, "k.json", text))
    assert info.value.field == "values.0"
