"""Frustum geometry for a tilted camera node.

A node sits at ``P = (x, y, z)`` and looks along azimuth ``theta`` with tilt
``gamma``. Its field of view (half-angles ``alpha`` horizontally, ``beta``
vertically) intersects the ground plane ``z = 0`` in a trapezoid whose near
edge is ``z * tan(gamma - beta)`` and far edge ``z * tan(gamma + beta)`` away
from the ground projection ``P'`` along the azimuth.

Angles are in radians throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Literal

import numpy as np
from numpy.typing import ArrayLike, NDArray

PredicateMode = Literal["quad", "annular"]

TWO_PI = 2.0 * math.pi


class DomainError(ValueError):
    """Raised when inputs leave the trapezoid regime of the sensing model."""


@dataclass(frozen=True)
class ModelParams:
    """Optics shared by every node: FOV half-angles and maximum tilt."""

    alpha: float
    beta: float
    k_max: float

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha < math.pi / 2:
            raise DomainError(f"alpha must lie in (0, pi/2), got {self.alpha!r}")
        if not 0.0 < self.beta < math.pi / 2:
            raise DomainError(f"beta must lie in (0, pi/2), got {self.beta!r}")
        if self.k_max < self.beta:
            raise DomainError(
                f"k_max ({self.k_max!r}) must be >= beta ({self.beta!r})"
            )
        if self.k_max + self.beta >= math.pi / 2:
            raise DomainError(
                f"k_max + beta must be < pi/2, got {self.k_max + self.beta!r}"
            )

    @classmethod
    def from_degrees(cls, alpha: float, beta: float, k_max: float) -> "ModelParams":
        return cls(math.radians(alpha), math.radians(beta), math.radians(k_max))


@dataclass(frozen=True)
class SensorPose:
    """Position, azimuth and tilt of one node.

    ``theta`` is stored normalized to ``[0, 2*pi)``. The tilt range is checked
    against the model parameters by :func:`validate_pose`, not here, since a
    pose alone does not know ``beta`` or ``k_max``.
    """

    x: float
    y: float
    z: float
    theta: float
    gamma: float

    def __post_init__(self) -> None:
        if not self.z > 0.0:
            raise DomainError(f"mount height z must be positive, got {self.z!r}")
        object.__setattr__(self, "theta", normalize_angle(self.theta))

    @property
    def ground(self) -> NDArray[np.float64]:
        return np.array([self.x, self.y], dtype=float)

    def with_gamma(self, gamma: float) -> "SensorPose":
        return replace(self, gamma=gamma)


@dataclass(frozen=True)
class Footprint:
    """Ground-plane trapezoid of one node.

    ``vertices`` holds ``[D1, D2, D3, D4]``: D1/D2 are the near-edge corners at
    azimuth ``theta - alpha`` / ``theta + alpha``, D3/D4 the far-edge corners at
    ``theta + alpha`` / ``theta - alpha``.
    """

    p_prime: NDArray[np.float64]
    near: float
    far: float
    d1: float
    d2: float
    vertices: NDArray[np.float64]
    area: float
    height: float

    @property
    def near_width(self) -> float:
        return float(np.linalg.norm(self.vertices[1] - self.vertices[0]))

    @property
    def far_width(self) -> float:
        return float(np.linalg.norm(self.vertices[2] - self.vertices[3]))

    @property
    def centroid(self) -> NDArray[np.float64]:
        """Area centroid of the trapezoid (not the vertex mean)."""
        return _polygon_centroid(self.vertices)


def normalize_angle(theta: float) -> float:
    t = math.fmod(theta, TWO_PI)
    if t < 0.0:
        t += TWO_PI
    # fmod of a tiny negative value can round up to exactly 2*pi
    return 0.0 if t >= TWO_PI else t


def validate_pose(pose: SensorPose, params: ModelParams) -> None:
    """Raise :class:`DomainError` unless the tilt keeps the footprint a trapezoid."""
    if pose.gamma < params.beta:
        raise DomainError(
            f"gamma ({pose.gamma!r}) < beta ({params.beta!r}): footprint would "
            "contain the nadir"
        )
    if pose.gamma + params.beta >= math.pi / 2:
        raise DomainError(
            f"gamma + beta ({pose.gamma + params.beta!r}) >= pi/2: far edge at infinity"
        )


def near_far(pose: SensorPose, params: ModelParams) -> tuple[float, float, float, float]:
    """Return ``(near, far, d1, d2)``.

    ``near``/``far`` are the distances from P' to the midpoints of the near and
    far edges, ``d1``/``d2`` the distances from P' to the corresponding corners.
    """
    validate_pose(pose, params)
    near = pose.z * math.tan(pose.gamma - params.beta)
    far = pose.z * math.tan(pose.gamma + params.beta)
    cos_a = math.cos(params.alpha)
    return near, far, near / cos_a, far / cos_a


def footprint(pose: SensorPose, params: ModelParams) -> Footprint:
    near, far, d1, d2 = near_far(pose, params)
    tan_a = math.tan(params.alpha)
    near_width = 2.0 * near * tan_a
    far_width = 2.0 * far * tan_a
    height = far - near
    area = 0.5 * height * (near_width + far_width)

    # canonical frame: azimuth along +x, then rotate by theta about P'
    local = np.array(
        [
            [near, -near * tan_a],
            [near, near * tan_a],
            [far, far * tan_a],
            [far, -far * tan_a],
        ]
    )
    c, s = math.cos(pose.theta), math.sin(pose.theta)
    rot = np.array([[c, -s], [s, c]])
    p_prime = pose.ground
    vertices = local @ rot.T + p_prime
    return Footprint(
        p_prime=p_prime,
        near=near,
        far=far,
        d1=d1,
        d2=d2,
        vertices=vertices,
        area=area,
        height=height,
    )


def volume(pose: SensorPose, params: ModelParams) -> float:
    """Volume of the sensing pyramid, ``S * z``.

    The closed form ``z/2 * (d2 + d1) * (d2 - d1) * sin(2 alpha)`` is evaluated
    alongside and must agree.
    """
    fp = footprint(pose, params)
    v = fp.area * pose.z
    closed = 0.5 * pose.z * (fp.d2 + fp.d1) * (fp.d2 - fp.d1) * math.sin(2.0 * params.alpha)
    assert abs(v - closed) <= 1e-9 * max(abs(v), 1.0), (v, closed)
    return v


def covers_points(
    pose: SensorPose,
    params: ModelParams,
    points: ArrayLike,
    mode: PredicateMode = "quad",
    fp: Footprint | None = None,
) -> NDArray[np.bool_]:
    """Vectorised coverage predicate over an ``(N, 2)`` array of ground points.

    ``quad`` tests membership in the trapezoid: the point is within ``alpha``
    of the azimuth and its distance along the azimuth lies between the near
    and far edges (equivalently, it sits between the ray's crossings with
    lines D1D2 and D3D4). ``annular`` keeps the angular test but bounds the
    plain distance ``|P'a|`` by ``[d1, d2]``.
    """
    if fp is None:
        fp = footprint(pose, params)
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    rel = pts - fp.p_prime
    ux, uy = math.cos(pose.theta), math.sin(pose.theta)
    along = rel[:, 0] * ux + rel[:, 1] * uy
    dist = np.hypot(rel[:, 0], rel[:, 1])
    inside_angle = along >= dist * math.cos(params.alpha)
    if mode == "quad":
        radial = (along >= fp.near) & (along <= fp.far)
    elif mode == "annular":
        radial = (dist >= fp.d1) & (dist <= fp.d2)
    else:
        raise ValueError(f"unknown predicate mode {mode!r}")
    return inside_angle & radial


def covers_point(
    pose: SensorPose,
    params: ModelParams,
    a: ArrayLike,
    mode: PredicateMode = "quad",
) -> bool:
    return bool(covers_points(pose, params, a, mode)[0])


def _polygon_centroid(vertices: NDArray[np.float64]) -> NDArray[np.float64]:
    x, y = vertices[:, 0], vertices[:, 1]
    xn, yn = np.roll(x, -1), np.roll(y, -1)
    cross = x * yn - xn * y
    a = cross.sum() / 2.0
    if abs(a) < 1e-300:
        return vertices.mean(axis=0)
    cx = ((x + xn) * cross).sum() / (6.0 * a)
    cy = ((y + yn) * cross).sum() / (6.0 * a)
    return np.array([cx, cy])
