"""Discretised monitored region, per-node covered-cell sets and coverage metrics.

Cells are indexed ``row * cols + col`` where ``row`` counts along +y from the
``y = 0`` edge. A cell is covered by a node when its centre point satisfies
the node's coverage predicate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.typing import NDArray

from .geometry import DomainError, Footprint, ModelParams, PredicateMode, SensorPose, covers_points, footprint

CellSet = NDArray[np.int64]
"""Sorted, duplicate-free array of cell indices."""

EMPTY: CellSet = np.zeros(0, dtype=np.int64)


@dataclass(frozen=True)
class Region:
    width: float
    height: float
    cell_size: float = 1.0

    def __post_init__(self) -> None:
        if not (self.width > 0 and self.height > 0 and self.cell_size > 0):
            raise DomainError("region width, height and cell_size must be positive")
        for name, extent in (("width", self.width), ("height", self.height)):
            k = extent / self.cell_size
            if abs(k - round(k)) > 1e-9 * max(k, 1.0):
                raise DomainError(f"{name} {extent!r} is not a multiple of cell_size {self.cell_size!r}")

    @property
    def cols(self) -> int:
        return int(round(self.width / self.cell_size))

    @property
    def rows(self) -> int:
        return int(round(self.height / self.cell_size))

    @property
    def n_cells(self) -> int:
        return self.rows * self.cols

    @property
    def area(self) -> float:
        return self.width * self.height

    def contains(self, x: float, y: float) -> bool:
        return 0.0 <= x <= self.width and 0.0 <= y <= self.height

    def cell_center(self, index: int | NDArray[np.int64]) -> NDArray[np.float64]:
        row, col = np.divmod(np.asarray(index), self.cols)
        return np.stack(
            [(col + 0.5) * self.cell_size, (row + 0.5) * self.cell_size], axis=-1
        ).astype(float)

    def universe(self) -> CellSet:
        return np.arange(self.n_cells, dtype=np.int64)


def lattice_cells(
    fp: Footprint,
    pose: SensorPose,
    params: ModelParams,
    cell_size: float,
    mode: PredicateMode = "quad",
) -> NDArray[np.int64]:
    """``(row, col)`` pairs of every lattice cell whose centre is covered.

    The lattice extends without bound in both directions, so cells outside
    any particular region are included. Only the footprint's bounding box is
    scanned.
    """
    if mode == "annular":
        # annular sector bulges past the trapezoid's far edge
        ang = pose.theta + np.linspace(-params.alpha, params.alpha, 33)
        arc = fp.p_prime + fp.d2 * np.stack([np.cos(ang), np.sin(ang)], axis=1)
        pts = np.vstack([fp.vertices, arc])
    else:
        pts = fp.vertices
    lo = pts.min(axis=0) / cell_size - 0.5
    hi = pts.max(axis=0) / cell_size - 0.5
    cols = np.arange(math.floor(lo[0]), math.ceil(hi[0]) + 1)
    rows = np.arange(math.floor(lo[1]), math.ceil(hi[1]) + 1)
    cc, rr = np.meshgrid(cols, rows)
    cc, rr = cc.ravel(), rr.ravel()
    centers = np.stack([(cc + 0.5) * cell_size, (rr + 0.5) * cell_size], axis=1)
    hit = covers_points(pose, params, centers, mode, fp=fp)
    return np.stack([rr[hit], cc[hit]], axis=1).astype(np.int64)


def rasterize(
    fp: Footprint,
    pose: SensorPose,
    params: ModelParams,
    region: Region,
    mode: PredicateMode = "quad",
) -> CellSet:
    """Cells of ``region`` whose centre lies inside the footprint."""
    rc = lattice_cells(fp, pose, params, region.cell_size, mode)
    rows, cols = rc[:, 0], rc[:, 1]
    keep = (rows >= 0) & (rows < region.rows) & (cols >= 0) & (cols < region.cols)
    return np.sort(rows[keep] * region.cols + cols[keep]).astype(np.int64)


def node_cells(
    pose: SensorPose, params: ModelParams, region: Region, mode: PredicateMode = "quad"
) -> CellSet:
    return rasterize(footprint(pose, params), pose, params, region, mode)


class CoverageState:
    """Family of per-node cell sets plus a per-cell coverage count.

    The union is the set of cells with a positive count; keeping counts lets a
    single node be moved in time proportional to the cells it touches.
    """

    def __init__(self, region: Region, family: Sequence[CellSet] = ()) -> None:
        self.region = region
        self.counts = np.zeros(region.n_cells, dtype=np.int32)
        self.family: list[CellSet] = []
        for cells in family:
            self.add_node(cells)

    @classmethod
    def from_poses(
        cls,
        poses: Sequence[SensorPose],
        params: ModelParams,
        region: Region,
        mode: PredicateMode = "quad",
    ) -> "CoverageState":
        return cls(region, [node_cells(p, params, region, mode) for p in poses])

    def __len__(self) -> int:
        return len(self.family)

    def add_node(self, cells: CellSet) -> int:
        cells = np.asarray(cells, dtype=np.int64)
        self.family.append(cells)
        self.counts[cells] += 1
        return len(self.family) - 1

    def update_node(self, node: int, cells: CellSet) -> None:
        cells = np.asarray(cells, dtype=np.int64)
        self.counts[self.family[node]] -= 1
        self.counts[cells] += 1
        self.family[node] = cells

    def remove_node(self, node: int) -> None:
        """Drop a node's contribution; its slot stays (as an empty set) so ids remain stable."""
        self.update_node(node, EMPTY)

    @property
    def total_cells(self) -> int:
        return self.region.n_cells

    @property
    def covered_mask(self) -> NDArray[np.bool_]:
        return self.counts > 0

    def union(self) -> CellSet:
        return np.flatnonzero(self.counts).astype(np.int64)

    def uncovered(self) -> CellSet:
        return np.flatnonzero(self.counts == 0).astype(np.int64)

    def covered_count(self) -> int:
        return int(np.count_nonzero(self.counts))

    def coverage_ratio(self) -> float:
        return coverage_ratio(self)

    def recompute_union(self) -> CellSet:
        """Union rebuilt from scratch out of the family, for consistency checks."""
        if not self.family:
            return EMPTY
        return np.unique(np.concatenate(self.family)).astype(np.int64)

    def unique_cells(self, node: int) -> CellSet:
        """Cells covered by ``node`` and by no other node."""
        cells = self.family[node]
        return cells[self.counts[cells] == 1]

    def copy(self) -> "CoverageState":
        other = CoverageState.__new__(CoverageState)
        other.region = self.region
        other.counts = self.counts.copy()
        other.family = list(self.family)
        return other


def coverage_ratio(state: CoverageState) -> float:
    if state.total_cells <= 0:
        raise DomainError("coverage ratio undefined for an empty universe")
    return state.covered_count() / state.total_cells


def analytic_eta(s_over_g: float, n: float) -> float:
    """Expected coverage of ``n`` independently placed footprints of relative area ``s_over_g``."""
    if not 0.0 <= s_over_g < 1.0:
        raise DomainError(f"S/G must lie in [0, 1), got {s_over_g!r}")
    if n < 0:
        raise DomainError(f"node count must be non-negative, got {n!r}")
    return -math.expm1(n * math.log1p(-s_over_g))


def analytic_min_nodes(eta: float, s: float, g: float) -> float:
    """Real-valued node count reaching ``eta`` with disjoint footprints of area ``s`` in ``g``.

    Callers round up to get an integer count.
    """
    if not 0.0 <= eta < 1.0:
        raise DomainError(f"eta must lie in [0, 1), got {eta!r}")
    if not 0.0 < s < g:
        raise DomainError(f"need 0 < S < G, got S={s!r}, G={g!r}")
    # log1p(-s/g) == ln(g - s) - ln(g), without the cancellation
    return math.log1p(-eta) / math.log1p(-s / g)
