"""
Frontier extraction shared by the greedy baseline and the RDE global fallback.

The frontier is the set of unvisited cells on the boundary between sensed and
unsensed space, taken from either side.
"""

from __future__ import annotations

from typing import List, Optional

import numpy as np

from src.world import Cell, euclidean_distance, row_major_key


def _dilate(mask: np.ndarray) -> np.ndarray:
    """8-connected dilation of a boolean mask."""
    height, width = mask.shape
    padded = np.pad(mask, 1, constant_values=False)
    out = np.zeros_like(mask)
    for dy in (0, 1, 2):
        for dx in (0, 1, 2):
            out |= padded[dy : dy + height, dx : dx + width]
    return out


def frontier_cells(sensed: np.ndarray, visited: np.ndarray) -> List[Cell]:
    """Unvisited cells adjacent to the other side of the sensed boundary, row-major."""
    boundary = (sensed & _dilate(~sensed)) | (~sensed & _dilate(sensed))
    ys, xs = np.nonzero(boundary & ~visited)
    return [(int(x), int(y)) for y, x in zip(ys, xs)]


def select_frontier(
    frontier: List[Cell],
    position: Cell,
    belief: np.ndarray,
    c: float,
    rng: np.random.Generator,
) -> Cell:
    """Frontier cell maximising belief - c * distance; ties drawn from `rng`."""
    scores = np.array(
        [belief[cell[1], cell[0]] - c * euclidean_distance(position, cell) for cell in frontier]
    )
    best = np.flatnonzero(scores == scores.max())
    if len(best) == 1:
        return frontier[int(best[0])]
    return frontier[int(rng.choice(best))]


def nearest_frontier(frontier: List[Cell], position: Cell, belief: np.ndarray) -> Optional[Cell]:
    """Closest frontier cell, higher belief then row-major order on ties. None when empty."""
    if not frontier:
        return None
    return min(
        frontier,
        key=lambda cell: (euclidean_distance(position, cell), -float(belief[cell[1], cell[0]]), row_major_key(cell)),
    )
