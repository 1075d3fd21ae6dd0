"""Per-node tilt selection that pushes the far edge out to the faced boundary."""

from __future__ import annotations

import enum
import math
from typing import Sequence

from .geometry import ModelParams, SensorPose
from .grid import Region


class BoundaryClass(enum.IntEnum):
    """Region face a node's azimuth points toward."""

    SET1 = 1  # +x face, x = width
    SET2 = 2  # +y face, y = height
    SET3 = 3  # -x face, x = 0
    SET4 = 4  # -y face, y = 0


def classify(pose: SensorPose, region: Region | None = None) -> BoundaryClass:
    """Quadrant of the azimuth, with half-open intervals ``[-45, 45)``, ``[45, 135)``, ...

    ``region`` is accepted for symmetry with :func:`optimal_tilt`; the class
    depends on the azimuth only.
    """
    k = math.floor(math.fmod(pose.theta + math.pi / 4, 2 * math.pi) / (math.pi / 2))
    return BoundaryClass(k % 4 + 1)


def raw_tilt(pose: SensorPose, params: ModelParams, region: Region) -> float:
    """Unclamped tilt placing the far-edge midpoint distance at the faced boundary distance."""
    cls = classify(pose, region)
    if cls is BoundaryClass.SET1:
        reach = region.width - pose.x
    elif cls is BoundaryClass.SET2:
        reach = region.height - pose.y
    elif cls is BoundaryClass.SET3:
        reach = pose.x
    else:
        reach = pose.y
    return math.atan(reach / pose.z) - params.beta


def optimal_tilt(pose: SensorPose, params: ModelParams, region: Region) -> float:
    return min(max(raw_tilt(pose, params, region), params.beta), params.k_max)


def is_clamped(pose: SensorPose, params: ModelParams, region: Region) -> bool:
    g = raw_tilt(pose, params, region)
    return not params.beta <= g <= params.k_max


def optimize_pose(pose: SensorPose, params: ModelParams, region: Region) -> SensorPose:
    return pose.with_gamma(optimal_tilt(pose, params, region))


def optimize_all(
    poses: Sequence[SensorPose], params: ModelParams, region: Region
) -> list[SensorPose]:
    return [optimize_pose(p, params, region) for p in poses]
