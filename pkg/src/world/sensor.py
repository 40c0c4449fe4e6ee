"""
Simulated AoI detector and the UAV's mutable mission state.

The detector is perfect inside its Chebyshev field of view: every cell within
`radius` of the UAV takes its ground-truth likelihood as belief. Cells never
sensed keep the prior.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from .grid import Cell, GridWorld

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class SensorModel:
    radius: int = 2
    prior: float = 0.0
    noise_std: float = 0.0

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError(f"Sensor radius must be >= 0, got {self.radius}")
        if not 0.0 <= self.prior <= 1.0:
            raise ValueError(f"Sensor prior must be in [0, 1], got {self.prior}")
        if self.noise_std < 0:
            raise ValueError(f"Sensor noise_std must be >= 0, got {self.noise_std}")


@dataclass
class MissionState:
    """
    Single-owner state of one simulated flight.

    `belief`, `sensed` and `visited` are (height, width) arrays indexed [y, x].
    `cached` holds (cell, belief) pairs of sensed, unvisited cells whose belief
    reached the dwell threshold.
    """

    position: Cell
    battery: float
    belief: np.ndarray
    sensed: np.ndarray
    visited: np.ndarray
    time: int = 0
    dwell: int = 0
    cached: List[Tuple[Cell, float]] = field(default_factory=list)

    @classmethod
    def initial(cls, world: GridWorld, sensor: SensorModel, position: Cell, battery: float) -> "MissionState":
        if not world.contains(position):
            raise ValueError(f"Start cell {position} is outside the {world.width}x{world.height} grid")
        if battery < 0:
            raise ValueError(f"Initial battery must be >= 0, got {battery}")
        visited = np.zeros(world.shape, dtype=bool)
        visited[position[1], position[0]] = True
        return cls(
            position=(int(position[0]), int(position[1])),
            battery=float(battery),
            belief=np.full(world.shape, sensor.prior, dtype=float),
            sensed=np.zeros(world.shape, dtype=bool),
            visited=visited,
        )

    def belief_at(self, cell: Cell) -> float:
        return float(self.belief[cell[1], cell[0]])

    def is_visited(self, cell: Cell) -> bool:
        return bool(self.visited[cell[1], cell[0]])

    def is_sensed(self, cell: Cell) -> bool:
        return bool(self.sensed[cell[1], cell[0]])

    def mark_visited(self, cell: Cell) -> None:
        self.visited[cell[1], cell[0]] = True


def sense(
    world: GridWorld,
    model: SensorModel,
    state: MissionState,
    rng: Optional[np.random.Generator] = None,
) -> List[Cell]:
    """
    Sense the field of view around `state.position` and return the cells sensed
    for the first time, in row-major order. The cached-point list is not
    touched here; the planner fills it from the returned cells.
    """
    if not world.contains(state.position):
        raise ValueError(f"UAV position {state.position} is outside the grid")

    rows, cols = world.window(state.position, model.radius)
    fresh = ~state.sensed[rows, cols]

    if model.noise_std > 0:
        if rng is None:
            raise ValueError("A random generator is required when sensor noise is enabled")
        truth = world.likelihood[rows, cols]
        noisy = truth + rng.normal(0.0, model.noise_std, size=truth.shape)
        state.belief[rows, cols] = np.clip(noisy, 0.0, 1.0)
    else:
        state.belief[rows, cols] = np.where(fresh, world.likelihood[rows, cols], state.belief[rows, cols])
    state.sensed[rows, cols] = True

    ys, xs = np.nonzero(fresh)
    newly = [(int(x) + cols.start, int(y) + rows.start) for y, x in zip(ys, xs)]

    LOGGER.debug("Sensed %d new cells around %s", len(newly), state.position)
    return newly
