"""Move redundant nodes into uncovered territory.

Each redundant node, largest footprint first, is sent to the uncovered cell
with the most uncovered cells around it. Sixteen azimuths are tried with the
footprint centroid anchored on that cell; the move is kept only if it
strictly increases the number of covered cells.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np
from numpy.typing import NDArray
from scipy.signal import fftconvolve

from . import tilt
from .cover import CoverSolution
from .geometry import ModelParams, PredicateMode, SensorPose, covers_points, footprint
from .grid import CellSet, CoverageState, Region, node_cells

N_AZIMUTHS = 16
_ANCHOR_ITERS = 60
_ANCHOR_TOL = 1e-12


class EmptyUncovered(LookupError):
    """No uncovered cell is left to move a node to."""


@dataclass(frozen=True)
class Move:
    node: int
    old_pose: SensorPose
    new_pose: SensorPose
    target_cell: int
    cells_gained: int
    accepted: bool


@dataclass
class RelocationPlan:
    moves: list[Move] = field(default_factory=list)
    rejected: list[Move] = field(default_factory=list)
    poses: list[SensorPose] = field(default_factory=list)
    state: CoverageState | None = None

    @property
    def total_gain(self) -> int:
        return sum(m.cells_gained for m in self.moves)


def rank_redundant(
    ids: Sequence[int], family: Sequence[CellSet], covered: NDArray[np.bool_]
) -> list[int]:
    """Order ids by descending count of their cells inside the covered set, then by id."""
    return sorted(ids, key=lambda i: (-int(np.count_nonzero(covered[family[i]])), i))


def disc_kernel(radius: float, cell_size: float) -> NDArray[np.float64]:
    k = int(math.floor(radius / cell_size))
    off = np.arange(-k, k + 1) * cell_size
    dx, dy = np.meshgrid(off, off)
    return (dx * dx + dy * dy <= radius * radius).astype(float)


def neighbour_scores(uncovered: CellSet, radius: float, region: Region) -> NDArray[np.int64]:
    """For every cell, the number of uncovered cells whose centres lie within ``radius``."""
    mask = np.zeros(region.n_cells, dtype=float)
    mask[uncovered] = 1.0
    mask = mask.reshape(region.rows, region.cols)
    scores = fftconvolve(mask, disc_kernel(radius, region.cell_size), mode="same")
    return np.rint(scores).astype(np.int64).ravel()


def best_target_cell(uncovered: CellSet, footprint_radius: float, region: Region) -> int:
    """Uncovered cell with the most uncovered neighbours within ``footprint_radius``.

    Ties go to the lowest cell index.
    """
    uncovered = np.asarray(uncovered, dtype=np.int64)
    if uncovered.size == 0:
        raise EmptyUncovered("every cell is already covered")
    scores = neighbour_scores(uncovered, footprint_radius, region)[uncovered]
    # argmax returns the first maximum and uncovered is sorted ascending
    return int(uncovered[np.argmax(scores)])


def anchored_pose(
    pose: SensorPose,
    theta: float,
    target: NDArray[np.float64],
    params: ModelParams,
    region: Region,
) -> SensorPose:
    """Pose with azimuth ``theta`` whose footprint centroid sits on ``target``.

    Tilt and position depend on each other (the tilt rule looks at the
    boundary distance from P', the centroid offset depends on the tilt), so
    the pair is solved by fixed-point iteration starting from the current tilt.
    """
    gamma = min(max(pose.gamma, params.beta), params.k_max)
    cand = replace(pose, theta=theta, gamma=gamma)
    for _ in range(_ANCHOR_ITERS):
        offset = footprint(replace(cand, x=0.0, y=0.0), params).centroid
        cand = replace(cand, x=float(target[0] - offset[0]), y=float(target[1] - offset[1]))
        new_gamma = tilt.optimal_tilt(cand, params, region)
        done = abs(new_gamma - cand.gamma) <= _ANCHOR_TOL
        cand = cand.with_gamma(new_gamma)
        if done:
            break
    offset = footprint(replace(cand, x=0.0, y=0.0), params).centroid
    return replace(cand, x=float(target[0] - offset[0]), y=float(target[1] - offset[1]))


def net_gain(state: CoverageState, node: int, new_cells: CellSet) -> int:
    """Change in covered-cell count if ``node``'s cells were replaced by ``new_cells``."""
    old = state.family[node]
    lost = int(np.count_nonzero(state.counts[old] == 1))
    others = state.counts[new_cells] - np.isin(new_cells, old, assume_unique=True)
    return int(np.count_nonzero(others == 0)) - lost


def relocate_node(
    node: int,
    target_cell: int,
    params: ModelParams,
    region: Region,
    state: CoverageState,
    pose: SensorPose,
    mode: PredicateMode = "quad",
    n_azimuths: int = N_AZIMUTHS,
) -> tuple[Move, CellSet]:
    """Best anchored candidate for ``node`` at ``target_cell``.

    Returns the move and the candidate's cell set. A move whose net gain is
    not strictly positive, or for which no candidate keeps P' inside the
    region with the target cell covered, comes back with ``accepted=False``
    and the old pose.
    """
    target = region.cell_center(target_cell)
    best: tuple[int, SensorPose, CellSet] | None = None
    for k in range(n_azimuths):
        cand = anchored_pose(pose, 2.0 * math.pi * k / n_azimuths, target, params, region)
        if not region.contains(cand.x, cand.y):
            continue
        if not covers_points(cand, params, target, mode)[0]:
            continue
        cells = node_cells(cand, params, region, mode)
        gain = net_gain(state, node, cells)
        if best is None or gain > best[0]:
            best = (gain, cand, cells)

    if best is None or best[0] <= 0:
        gain = -1 if best is None else best[0]
        return Move(node, pose, pose, target_cell, gain, False), state.family[node]
    gain, cand, cells = best
    return Move(node, pose, cand, target_cell, gain, True), cells


def relocate_all(
    solution: CoverSolution,
    state: CoverageState,
    poses: Sequence[SensorPose],
    params: ModelParams,
    region: Region,
    mode: PredicateMode = "quad",
) -> RelocationPlan:
    """Place every redundant node in turn; each node moves at most once.

    ``state`` is not modified; the plan carries an updated copy.
    """
    state = state.copy()
    poses = list(poses)
    plan = RelocationPlan(poses=poses, state=state)
    remaining = list(solution.redundant)
    while remaining:
        uncovered = state.uncovered()
        if uncovered.size == 0:
            break
        h = rank_redundant(remaining, state.family, state.covered_mask)[0]
        remaining.remove(h)
        radius = math.sqrt(footprint(poses[h], params).area / math.pi)
        target = best_target_cell(uncovered, radius, region)
        before = state.covered_count()
        move, cells = relocate_node(h, target, params, region, state, poses[h], mode)
        if move.accepted:
            state.update_node(h, cells)
            poses[h] = move.new_pose
            plan.moves.append(move)
            assert state.covered_count() == before + move.cells_gained
        else:
            plan.rejected.append(move)
    return plan
