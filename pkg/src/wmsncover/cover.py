"""Greedy set cover: pick a working node set that reaches a target coverage.

Nodes left out of the selection are redundant, meaning they can be removed
without the coverage dropping below the target.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .grid import CellSet


@dataclass
class CoverSolution:
    selected: list[int]
    redundant: list[int]
    achieved_eta: float
    target_eta: float
    shortfall: bool = False
    gains: list[int] = field(default_factory=list)
    """New cells contributed by each selected node, in selection order."""

    @property
    def m_prime(self) -> int:
        return len(self.selected)


def required_cells(target_eta: float, total: int) -> int:
    """Smallest covered-cell count whose ratio reaches ``target_eta``."""
    # tolerance absorbs the rounding in target_eta = count / total
    return max(0, math.ceil(target_eta * total - 1e-9))


def greedy_set_cover(
    family: Sequence[CellSet], universe: CellSet, target_eta: float
) -> CoverSolution:
    """Repeatedly select the node adding the most not-yet-covered cells.

    Stops once the covered fraction of ``universe`` reaches ``target_eta`` or
    no node adds anything. Ties go to the lowest node id.
    """
    if not 0.0 <= target_eta <= 1.0:
        raise ValueError(f"target_eta must lie in [0, 1], got {target_eta!r}")
    universe = np.asarray(universe, dtype=np.int64)
    total = len(universe)
    n = len(family)
    if total == 0:
        return CoverSolution([], list(range(n)), 0.0, target_eta, shortfall=target_eta > 0)

    # remap cells to positions in the universe so the mask stays compact
    sets = [np.searchsorted(universe, np.asarray(f, dtype=np.int64)) for f in family]
    covered = np.zeros(total, dtype=bool)
    need = required_cells(target_eta, total)
    n_covered = 0
    selected: list[int] = []
    gains: list[int] = []
    remaining = set(range(n))

    while n_covered < need and remaining:
        best, best_gain = -1, 0
        for i in sorted(remaining):
            g = int(np.count_nonzero(~covered[sets[i]]))
            if g > best_gain:
                best, best_gain = i, g
        if best_gain == 0:
            break
        covered[sets[best]] = True
        n_covered += best_gain
        selected.append(best)
        gains.append(best_gain)
        remaining.discard(best)

    chosen = set(selected)
    redundant = [i for i in range(n) if i not in chosen]
    return CoverSolution(
        selected=selected,
        redundant=redundant,
        achieved_eta=n_covered / total,
        target_eta=target_eta,
        shortfall=n_covered < need,
        gains=gains,
    )
