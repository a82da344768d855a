"""
Loading of JSON input documents and their conversion into domain objects.

Every failure on the way (unreadable file, bad JSON, schema violation, a value the domain
constructors reject) surfaces as an InputError naming the offending location.
"""

from __future__ import annotations

import json
import logging
from collections.abc import Callable
from pathlib import Path
from typing import Any, Optional, TypeVar

from pydantic import TypeAdapter, ValidationError

from zerogrowth.common.errors import InputError, ParameterError
from zerogrowth.efun.hadamard import FiniteOrderFunction, ZeroEntry
from zerogrowth.laplace.kernel import Kernel
from zerogrowth.models import (
    AnnuliDoc,
    CapDocument,
    CloudDoc,
    CloudFamilyDoc,
    FunctionDoc,
    KernelDoc,
    Point,
    ReportDoc,
    SeqSpecDoc,
    ZeroDoc,
)
from zerogrowth.potential.clouds import PointCloud
from zerogrowth.seqlab.spec import SequenceSpec

log = logging.getLogger(__name__)

T = TypeVar("T")

_CAP_ADAPTER: TypeAdapter[CloudDoc | CloudFamilyDoc | AnnuliDoc] = TypeAdapter(CapDocument)


def read_json(path: Path) -> Any:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}", field="input") from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: {e.msg} at line {e.lineno} column {e.colno}", field=f"line {e.lineno}") from e


def _loc(error: dict[str, Any]) -> Optional[str]:
    parts = [str(part) for part in error.get("loc", ())]
    return ".".join(parts) or None


def validate(adapter: Callable[[Any], T], raw: Any, source: str) -> T:
    try:
        return adapter(raw)
    except ValidationError as e:
        first = e.errors()[0]
        field = _loc(first)
        log.debug("schema error source=%s field=%s errors=%s", source, field, e.error_count())
        raise InputError(f"{source}: {field or '<root>'}: {first.get('msg')}", field=field) from e


def _convert(build: Callable[[], T], field: str) -> T:
    try:
        return build()
    except ParameterError as e:
        raise InputError(f"{field}: {e}", field=field) from e


def load_function_doc(path: Path) -> FunctionDoc:
    return validate(FunctionDoc.model_validate, read_json(path), str(path))


def load_seqspec_doc(path: Path) -> SeqSpecDoc:
    return validate(SeqSpecDoc.model_validate, read_json(path), str(path))


def load_cap_doc(path: Path) -> CloudDoc | CloudFamilyDoc | AnnuliDoc:
    return validate(_CAP_ADAPTER.validate_python, read_json(path), str(path))


def load_kernel_doc(path: Path) -> KernelDoc:
    return validate(KernelDoc.model_validate, read_json(path), str(path))


def load_report_doc(path: Path) -> ReportDoc:
    return validate(ReportDoc.model_validate, read_json(path), str(path))


def to_function(doc: FunctionDoc, *, field: str = "function") -> FiniteOrderFunction:
    def build() -> FiniteOrderFunction:
        if doc.identically_zero:
            return FiniteOrderFunction.zero()
        return FiniteOrderFunction(
            leading=doc.leading.to_complex(),
            origin_mult=doc.origin_mult,
            expoly=tuple(c.to_complex() for c in doc.expoly),
            genus=doc.genus,
            zeros=tuple(ZeroEntry(complex(z.re, z.im), z.mult) for z in doc.zeros),
            factor_genus=doc.factor_genus,
        )

    return _convert(build, field)


def function_document(f: FiniteOrderFunction) -> FunctionDoc:
    """zerodata-v1 form of a function, the inverse of to_function."""

    return FunctionDoc(
        leading=Point(re=f.leading.real, im=f.leading.imag),
        origin_mult=f.origin_mult,
        expoly=[Point(re=c.real, im=c.imag) for c in f.expoly],
        genus=f.genus,
        factor_genus=f.factor_genus,
        zeros=[ZeroDoc(re=z.location.real, im=z.location.imag, mult=z.multiplicity) for z in f.zeros],
        identically_zero=f.identically_zero,
    )


def to_sequence(doc: SeqSpecDoc, *, window_fraction: float = 0.5) -> SequenceSpec:
    functions = tuple(to_function(m, field=f"members.{i}") for i, m in enumerate(doc.members))
    if doc.k is not None:
        ks: tuple[float, ...] = tuple(doc.k)
    else:
        assert doc.series is not None
        ks = tuple(float(k) for k in doc.series.exponents)
    fraction = doc.window_fraction if doc.window_fraction is not None else window_fraction
    return _convert(
        lambda: SequenceSpec(
            functions=functions,
            k=ks,
            R_grid=tuple(doc.R_grid),
            R_witness=tuple(doc.R_witness) if doc.R_witness is not None else None,
            window_fraction=fraction,
        ),
        "seqspec",
    )


def _points(points: list[Point]) -> list[complex]:
    return [p.to_complex() for p in points]


def to_cloud(doc: CloudDoc) -> PointCloud:
    return _convert(lambda: PointCloud(_points(doc.points), doc.label or "cloud"), "points")


def to_family(doc: CloudFamilyDoc) -> dict[float, Optional[PointCloud]]:
    family: dict[float, Optional[PointCloud]] = {}
    for i, member in enumerate(doc.members):
        if member.R in family:
            raise InputError(f"members.{i}.R: duplicate radius {member.R}", field=f"members.{i}.R")
        family[member.R] = PointCloud.from_points(_points(member.points), f"{doc.label}|R={member.R:g}")
    return family


def to_annuli(doc: AnnuliDoc) -> dict[int, Optional[PointCloud]]:
    pieces: dict[int, Optional[PointCloud]] = {}
    for i, piece in enumerate(doc.depths):
        if piece.depth in pieces:
            raise InputError(f"depths.{i}.depth: duplicate depth {piece.depth}", field=f"depths.{i}.depth")
        pieces[piece.depth] = PointCloud.from_points(_points(piece.points), f"{doc.label}|A_{piece.depth}")
    return pieces


def to_kernel(doc: KernelDoc) -> Kernel:
    if doc.type == "piecewise_const":
        assert doc.breaks is not None and doc.values is not None
        breaks, values = doc.breaks, doc.values
        return _convert(
            lambda: Kernel.piecewise_constant(breaks, values, support_hint=doc.support_hint), "breaks"
        )
    assert doc.t is not None and doc.phi is not None
    t, phi = doc.t, doc.phi
    return _convert(lambda: Kernel.samples(t, phi, support_hint=doc.support_hint), "t")
