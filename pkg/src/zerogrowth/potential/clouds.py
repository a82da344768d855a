from __future__ import annotations

import math
from collections.abc import Iterable
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.spatial import cKDTree

from zerogrowth.common.errors import ParameterError

DEDUP_TOL = 1e-14


def _dedup(points: np.ndarray) -> np.ndarray:
    """Drop points within DEDUP_TOL of an earlier kept one; survivors keep their input order."""

    if points.size < 2:
        return points
    tree = cKDTree(np.column_stack([points.real, points.imag]))
    pairs = tree.query_pairs(DEDUP_TOL, output_type="ndarray")
    if not len(pairs):
        return points
    drop = np.zeros(points.size, dtype=bool)
    # pairs come as i < j; sorting by i settles drop[i] before it is consulted
    for i, j in pairs[np.lexsort((pairs[:, 1], pairs[:, 0]))]:
        if not drop[i]:
            drop[j] = True
    return points[~drop]


@dataclass(frozen=True, eq=False)
class PointCloud:
    points: np.ndarray
    label: str = ""

    def __post_init__(self) -> None:
        pts = np.asarray(self.points, dtype=complex).reshape(-1)
        if pts.size == 0:
            raise ParameterError(f"point cloud {self.label!r} is empty")
        if not np.all(np.isfinite(pts)):
            raise ParameterError(f"point cloud {self.label!r} has non-finite points")
        object.__setattr__(self, "points", _dedup(pts))

    def __len__(self) -> int:
        return int(self.points.size)

    @classmethod
    def from_points(cls, points: Iterable[complex], label: str = "") -> Optional[PointCloud]:
        """Cloud over `points`, or None when there are none."""

        pts = np.fromiter((complex(p) for p in points), dtype=complex)
        return cls(pts, label) if pts.size else None

    def within(self, R: float) -> Optional[PointCloud]:
        """E_R = E intersected with |z| <= R."""

        return PointCloud.from_points(self.points[np.abs(self.points) <= R], f"{self.label}|R={R:g}")


def circle_cloud(count: int, *, radius: float = 1.0, center: complex = 0j, label: str = "circle") -> PointCloud:
    if count < 1 or radius <= 0:
        raise ParameterError("circle cloud needs count >= 1 and radius > 0")
    thetas = 2.0 * math.pi * np.arange(count) / count
    return PointCloud(center + radius * np.exp(1j * thetas), label)


def segment_cloud(a: complex, b: complex, count: int, *, label: str = "segment") -> PointCloud:
    if count < 2:
        raise ParameterError("segment cloud needs count >= 2")
    t = np.linspace(0.0, 1.0, count)
    return PointCloud(complex(a) + t * (complex(b) - complex(a)), label)


def ray_cloud(depth_max: int, *, per_annulus: int = 64, theta: float = 0.0, label: str = "ray") -> PointCloud:
    """The ray {r e^{i theta}: 2 <= r <= 2^{depth_max+1}}, `per_annulus` points per dyadic annulus."""

    if depth_max < 1 or per_annulus < 2:
        raise ParameterError("ray cloud needs depth_max >= 1 and per_annulus >= 2")
    t = np.linspace(0.0, 1.0, per_annulus)
    radii = np.concatenate([2.0**k * (1.0 + t) for k in range(1, depth_max + 1)])
    return PointCloud(radii * np.exp(1j * theta), label)


def annulus_pieces(cloud: PointCloud, depth_max: int) -> dict[int, Optional[PointCloud]]:
    """Portion of the cloud in each closed dyadic annulus 2^k <= |z| <= 2^{k+1}, k = 1..depth_max."""

    if depth_max < 1:
        raise ParameterError(f"depth_max must be >= 1, got {depth_max}")
    moduli = np.abs(cloud.points)
    pieces: dict[int, Optional[PointCloud]] = {}
    for k in range(1, depth_max + 1):
        mask = (moduli >= 2.0**k) & (moduli <= 2.0 ** (k + 1))
        pieces[k] = PointCloud.from_points(cloud.points[mask], f"{cloud.label}|A_{k}")
    return pieces
