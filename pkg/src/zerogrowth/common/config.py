from __future__ import annotations

import json
import os
import tomllib
from pathlib import Path
from typing import Any, Literal, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from zerogrowth.common.errors import InputError


class RunConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    nodes: int = 4096
    tol: float = 1e-8
    seed: int = 0
    out_path: Optional[str] = None
    format: Literal["json", "csv"] = "json"

    radii: list[float] = Field(default_factory=lambda: [0.5, 1.0, 2.0])
    window_fraction: float = 0.5
    m_max: int = 4
    tol_zero: float = 1e-3
    tol_inf: float = 1e3
    disk_radius: float = 20.0
    s_grid: list[float] = Field(default_factory=lambda: [0.5, 1.0, 2.0])
    capacity_points: int = 64
    depth_max: int = 12

    @field_validator("nodes")
    @classmethod
    def _power_of_two(cls, v: int) -> int:
        if v < 64 or v & (v - 1):
            raise ValueError(f"nodes must be a power of two >= 64, got {v}")
        return v

    @field_validator("tol", "tol_zero", "tol_inf", "disk_radius")
    @classmethod
    def _positive(cls, v: float) -> float:
        if not v > 0:
            raise ValueError(f"must be positive, got {v}")
        return v

    @field_validator("window_fraction")
    @classmethod
    def _fraction(cls, v: float) -> float:
        if not 0.0 < v <= 1.0:
            raise ValueError(f"window_fraction must lie in (0, 1], got {v}")
        return v

    @field_validator("m_max", "depth_max")
    @classmethod
    def _at_least_one(cls, v: int) -> int:
        if v < 1:
            raise ValueError(f"must be >= 1, got {v}")
        return v

    @field_validator("capacity_points")
    @classmethod
    def _at_least_two(cls, v: int) -> int:
        if v < 2:
            raise ValueError(f"capacity_points must be >= 2, got {v}")
        return v

    @field_validator("radii")
    @classmethod
    def _positive_radii(cls, v: list[float]) -> list[float]:
        if not v or any(not r > 0 for r in v):
            raise ValueError("radii must be a nonempty list of positive reals")
        return sorted(v)


_ENV_KEYS = {
    "nodes": "ZEROGROWTH_NODES",
    "tol": "ZEROGROWTH_TOL",
    "seed": "ZEROGROWTH_SEED",
    "format": "ZEROGROWTH_FORMAT",
}


def _env_overrides() -> dict[str, Any]:
    load_dotenv(override=False)
    out: dict[str, Any] = {}
    for key, var in _ENV_KEYS.items():
        value = os.getenv(var)
        if value:
            out[key] = value.strip()
    return out


def _read_config_file(path: Path) -> dict[str, Any]:
    if not path.exists():
        raise InputError(f"Missing config file: {path}", field="config")
    text = path.read_text(encoding="utf-8")
    try:
        if path.suffix.lower() == ".json":
            raw = json.loads(text)
        else:
            raw = tomllib.loads(text)
    except (json.JSONDecodeError, tomllib.TOMLDecodeError) as e:
        raise InputError(f"cannot parse config file {path}: {e}", field="config") from e
    if not isinstance(raw, dict):
        raise InputError(f"config file {path} must hold a table/object", field="config")
    # A [run] table is accepted so the TOML example can group keys.
    section = raw.get("run", raw)
    return dict(section)


def load_config(path: Optional[Path] = None, overrides: Optional[dict[str, Any]] = None) -> RunConfig:
    """
    Resolve a RunConfig. Precedence, lowest first: defaults, ZEROGROWTH_* environment
    (optionally from .env), explicit overrides (CLI flags), then the config file.
    """

    raw: dict[str, Any] = _env_overrides()
    raw.update({k: v for k, v in (overrides or {}).items() if v is not None})
    if path is not None:
        raw.update(_read_config_file(path))

    try:
        return RunConfig.model_validate(raw)
    except ValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(part) for part in first.get("loc", ())) or None
        raise InputError(f"invalid config: {first.get('msg')}", field=field) from e
