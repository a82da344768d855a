from __future__ import annotations

from typing import Annotated, Any, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Discriminator, Field, FiniteFloat, Tag, model_validator


class _Doc(BaseModel):
    model_config = ConfigDict(extra="forbid")


class Point(_Doc):
    re: FiniteFloat
    im: FiniteFloat = 0.0

    def to_complex(self) -> complex:
        return complex(self.re, self.im)


class ZeroDoc(_Doc):
    re: FiniteFloat
    im: FiniteFloat = 0.0
    mult: int = Field(default=1, ge=1)


class FunctionDoc(_Doc):
    """zerodata-v1: a z^m exp(W(z)) prod G(z/z_j, p)^{mult_j}."""

    format: Literal["zerodata-v1"] = "zerodata-v1"
    leading: Point = Field(default_factory=lambda: Point(re=1.0))
    origin_mult: int = Field(default=0, ge=0)
    expoly: list[Point] = Field(default_factory=list)
    genus: int = Field(default=0, ge=0)
    factor_genus: Optional[int] = Field(default=None, ge=0)
    zeros: list[ZeroDoc] = Field(default_factory=list)
    identically_zero: bool = False
    points: list[Point] = Field(default_factory=list)


class RegionDoc(_Doc):
    beta: float = Field(gt=0)
    gamma: float = Field(ge=0)
    tau: float = Field(default=0.0, ge=0)


class SeriesDoc(_Doc):
    exponents: list[int]
    samples: list[Point] = Field(default_factory=list)
    C: Optional[float] = Field(default=None, ge=0)
    z0: Point = Field(default_factory=lambda: Point(re=0.0))
    rho0: float = Field(default=1.0, gt=0)


class SeqSpecDoc(_Doc):
    format: Literal["seqspec-v1"] = "seqspec-v1"
    members: list[FunctionDoc] = Field(min_length=1)
    k: Optional[list[float]] = None
    R_grid: list[float] = Field(min_length=1)
    R_witness: Optional[list[float]] = None
    window_fraction: Optional[float] = None
    region: Optional[RegionDoc] = None
    series: Optional[SeriesDoc] = None

    @model_validator(mode="after")
    def _normalizers(self) -> SeqSpecDoc:
        if self.k is None and self.series is None:
            raise ValueError("either k or series.exponents must be given")
        return self


class CloudDoc(_Doc):
    format: Literal["cloud-v1"] = "cloud-v1"
    label: str = ""
    points: list[Point] = Field(min_length=1)
    n: Optional[int] = Field(default=None, ge=2)


class FamilyMember(_Doc):
    R: float = Field(gt=0)
    points: list[Point] = Field(default_factory=list)


class CloudFamilyDoc(_Doc):
    format: Literal["cloudfamily-v1"] = "cloudfamily-v1"
    label: str = ""
    members: list[FamilyMember] = Field(min_length=1)


class AnnulusPiece(_Doc):
    depth: int = Field(ge=1)
    points: list[Point] = Field(default_factory=list)


class AnnuliDoc(_Doc):
    format: Literal["annuli-v1"] = "annuli-v1"
    label: str = ""
    depths: list[AnnulusPiece] = Field(min_length=1)


def _cap_kind(value: Any) -> Optional[str]:
    if isinstance(value, dict):
        if "format" in value:
            return value["format"]
        if "members" in value:
            return "cloudfamily-v1"
        if "depths" in value:
            return "annuli-v1"
        return "cloud-v1"
    return getattr(value, "format", None)


CapDocument = Annotated[
    Union[
        Annotated[CloudDoc, Tag("cloud-v1")],
        Annotated[CloudFamilyDoc, Tag("cloudfamily-v1")],
        Annotated[AnnuliDoc, Tag("annuli-v1")],
    ],
    Discriminator(_cap_kind),
]


class ObstructionDoc(_Doc):
    truncations: list[float] = Field(min_length=1)
    R_grid: list[float] = Field(min_length=1)
    q: float = Field(default=1.5, gt=1, lt=2)
    R_search: Optional[float] = Field(default=None, gt=0)


class KernelDoc(_Doc):
    """kernel-v1: piecewise-constant {breaks, values} or sampled {t, phi}."""

    format: Literal["kernel-v1"] = "kernel-v1"
    type: Literal["piecewise_const", "samples"]
    breaks: Optional[list[FiniteFloat]] = None
    values: Optional[list[FiniteFloat]] = None
    t: Optional[list[FiniteFloat]] = None
    phi: Optional[list[FiniteFloat]] = None
    support_hint: Optional[tuple[float, float]] = None
    n: Optional[float] = Field(default=None, gt=0)
    q: float = Field(default=1.5, gt=1, lt=2)
    obstruction: Optional[ObstructionDoc] = None

    @model_validator(mode="after")
    def _representation(self) -> KernelDoc:
        if self.type == "piecewise_const" and (self.breaks is None or self.values is None):
            raise ValueError("piecewise_const kernels need breaks and values")
        if self.type == "samples" and (self.t is None or self.phi is None):
            raise ValueError("sampled kernels need t and phi")
        return self


class EvidenceTable(_Doc):
    columns: list[str] = Field(default_factory=list)
    dtypes: list[Literal["int", "float"]] = Field(default_factory=list)
    rows: list[list[Any]] = Field(default_factory=list)

    @model_validator(mode="after")
    def _shape(self) -> EvidenceTable:
        if len(self.dtypes) != len(self.columns):
            raise ValueError("dtypes must name one type per column")
        if any(len(row) != len(self.columns) for row in self.rows):
            raise ValueError("every evidence row needs one value per column")
        return self


class ReportDoc(_Doc):
    format: Literal["report-v1"] = "report-v1"
    command: str
    version: str
    config: dict[str, Any] = Field(default_factory=dict)
    results: dict[str, Any] = Field(default_factory=dict)
    evidence: EvidenceTable = Field(default_factory=EvidenceTable)
