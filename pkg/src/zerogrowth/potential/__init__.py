from zerogrowth.potential.capacity import (
    BetaEstimate,
    CapacityEstimate,
    beta_exponent,
    capacity_estimate,
    fekete_bruteforce,
    leja_indices,
)
from zerogrowth.potential.clouds import (
    PointCloud,
    annulus_pieces,
    circle_cloud,
    ray_cloud,
    segment_cloud,
)
from zerogrowth.potential.thinness import ThinnessReport, wiener_partial_sums

__all__ = [
    "BetaEstimate",
    "CapacityEstimate",
    "PointCloud",
    "ThinnessReport",
    "annulus_pieces",
    "beta_exponent",
    "capacity_estimate",
    "circle_cloud",
    "fekete_bruteforce",
    "leja_indices",
    "ray_cloud",
    "segment_cloud",
    "wiener_partial_sums",
]
