"""Coverage optimisation for networks of tilted camera sensors on a ground plane."""

__version__ = "0.1.0"

from .geometry import (  # noqa: E402
    DomainError,
    Footprint,
    ModelParams,
    SensorPose,
    covers_point,
    covers_points,
    footprint,
    near_far,
    volume,
)
from .grid import CoverageState, Region, analytic_eta, analytic_min_nodes, coverage_ratio, rasterize  # noqa: E402

__all__ = [
    "CoverageState",
    "DomainError",
    "Footprint",
    "ModelParams",
    "Region",
    "SensorPose",
    "analytic_eta",
    "analytic_min_nodes",
    "coverage_ratio",
    "covers_point",
    "covers_points",
    "footprint",
    "near_far",
    "rasterize",
    "volume",
]
