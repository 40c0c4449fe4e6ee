"""
Robustness-weighted A* over the 8-connected grid.

Stepping onto cell v costs max(eps * len, len - w * dist_aoi(v) / 100), where
len is 1 or sqrt(2). With w > 0 the planner bends routes through cells the UAV
believes are AoI; with w = 0 it is a plain shortest-path search.
"""

from __future__ import annotations

import heapq
import itertools
import logging
import math
from typing import Dict, List, Optional, Sequence

import numpy as np

from src.world import Cell, euclidean_distance

from .robustness import aoi_distance

LOGGER = logging.getLogger(__name__)

EPSILON = 0.01

_MOVES = [(dx, dy) for dy in (-1, 0, 1) for dx in (-1, 0, 1) if dx or dy]


class PathNotFoundError(RuntimeError):
    """Raised when A* exhausts the grid without reaching the goal."""


def edge_cost(src: Cell, dst: Cell, belief: np.ndarray, weight: float, beta: float, epsilon: float = EPSILON) -> float:
    length = euclidean_distance(src, dst)
    bonus = weight * aoi_distance(float(belief[dst[1], dst[0]]), beta) / 100.0
    return max(epsilon * length, length - bonus)


def path_cost(path: Sequence[Cell], belief: np.ndarray, weight: float, beta: float, epsilon: float = EPSILON) -> float:
    return sum(edge_cost(a, b, belief, weight, beta, epsilon) for a, b in zip(path, path[1:]))


def _reconstruct(parents: Dict[Cell, Optional[Cell]], goal: Cell) -> List[Cell]:
    path = [goal]
    node = parents[goal]
    while node is not None:
        path.append(node)
        node = parents[node]
    return path[::-1]


def ra_star(
    start: Cell,
    goal: Cell,
    belief: np.ndarray,
    weight: float,
    beta: float,
    epsilon: float = EPSILON,
) -> List[Cell]:
    """
    Cheapest 8-connected path from start to goal, both included.

    The heuristic eps * Euclidean distance never exceeds the remaining cost
    because every edge costs at least eps times its length.
    """
    height, width = belief.shape

    def inside(cell: Cell) -> bool:
        return 0 <= cell[0] < width and 0 <= cell[1] < height

    if not inside(start) or not inside(goal):
        raise ValueError(f"Path endpoints {start} -> {goal} must lie inside the {width}x{height} grid")
    if start == goal:
        return [start]

    counter = itertools.count()
    g_score: Dict[Cell, float] = {start: 0.0}
    parents: Dict[Cell, Optional[Cell]] = {start: None}
    closed = set()
    open_heap = [(epsilon * euclidean_distance(start, goal), next(counter), start)]

    while open_heap:
        _, _, node = heapq.heappop(open_heap)
        if node in closed:
            continue
        if node == goal:
            return _reconstruct(parents, goal)
        closed.add(node)

        base = g_score[node]
        for dx, dy in _MOVES:
            nxt = (node[0] + dx, node[1] + dy)
            if not inside(nxt) or nxt in closed:
                continue
            tentative = base + edge_cost(node, nxt, belief, weight, beta, epsilon)
            if tentative < g_score.get(nxt, math.inf):
                g_score[nxt] = tentative
                parents[nxt] = node
                heapq.heappush(open_heap, (tentative + epsilon * euclidean_distance(nxt, goal), next(counter), nxt))

    raise PathNotFoundError(f"No path from {start} to {goal}")
