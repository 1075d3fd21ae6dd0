"""Independent reference computations used to check the library.

Nothing here imports the code under test beyond plain data types.
"""

from __future__ import annotations

import itertools
import math

import numpy as np


def shoelace_area(vertices) -> float:
    v = np.asarray(vertices, dtype=float)
    # shift to the first vertex: absolute coordinates far from a tiny polygon cancel badly
    v = v - v[0]
    x, y = v[:, 0], v[:, 1]
    return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y)))


def winding_number(point, polygon) -> int:
    """Winding number of ``polygon`` around ``point`` (Sunday's crossing rule)."""
    px, py = point
    wn = 0
    n = len(polygon)
    for i in range(n):
        x0, y0 = polygon[i]
        x1, y1 = polygon[(i + 1) % n]
        cross = (x1 - x0) * (py - y0) - (px - x0) * (y1 - y0)
        if y0 <= py:
            if y1 > py and cross > 0:
                wn += 1
        elif y1 <= py and cross < 0:
            wn -= 1
    return wn


def distance_to_polygon_edge(point, polygon) -> float:
    p = np.asarray(point, dtype=float)
    best = math.inf
    n = len(polygon)
    for i in range(n):
        a = np.asarray(polygon[i], dtype=float)
        b = np.asarray(polygon[(i + 1) % n], dtype=float)
        ab = b - a
        t = 0.0 if not ab.any() else float(np.clip(np.dot(p - a, ab) / np.dot(ab, ab), 0, 1))
        best = min(best, float(np.linalg.norm(p - (a + t * ab))))
    return best


def reference_greedy(family: list[set[int]], universe: set[int], target: float):
    """Textbook greedy cover on Python sets, lowest index on ties."""
    covered: set[int] = set()
    order: list[int] = []
    need = math.ceil(target * len(universe) - 1e-9)
    while len(covered) < need:
        gains = [len(s - covered) if i not in order else -1 for i, s in enumerate(family)]
        best = max(range(len(family)), key=lambda i: (gains[i], -i)) if family else None
        if best is None or gains[best] <= 0:
            break
        order.append(best)
        covered |= family[best]
    return order, covered


def exact_min_cover(family: list[set[int]], universe: set[int]) -> int | None:
    """Size of the smallest subfamily whose union is ``universe`` (exhaustive)."""
    for k in range(len(family) + 1):
        for combo in itertools.combinations(range(len(family)), k):
            got: set[int] = set()
            for i in combo:
                got |= family[i]
            if got >= universe:
                return k
    return None
