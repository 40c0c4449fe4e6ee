"""
Greedy likelihood-weighted frontier exploration, the comparison planner.

At every decision the UAV picks the frontier cell maximising
belief(cell) - c * distance(position, cell) and flies a shortest path to it.
"""

from __future__ import annotations

import logging
import time
from typing import Optional

import numpy as np

from src.world import Cell, GridWorld, SensorModel

from .frontier import frontier_cells, select_frontier
from .pathing import ra_star
from .planner import Flight
from .robustness import RdeParams
from .trajectory import Trajectory

LOGGER = logging.getLogger(__name__)


def baseline_run(
    world: GridWorld,
    params: RdeParams,
    sensor: SensorModel,
    rng: np.random.Generator,
    steps: int = 2000,
    start: Optional[Cell] = None,
) -> Trajectory:
    """Fly one greedy frontier mission under the same battery and return rules as RDE."""
    flight = Flight("baseline", world, params, sensor, rng, steps, start)
    p = flight.params

    while not flight.finished:
        started = time.perf_counter()
        if flight.reserve_exhausted():
            flight.go_home("reserve", started)
            break

        state = flight.state
        frontier = frontier_cells(state.sensed, state.visited)
        if not frontier:
            LOGGER.debug("No frontier left at t=%s", state.time)
            flight.go_home("exhausted", started)
            break

        target = select_frontier(frontier, state.position, state.belief, p.baseline_c, rng)
        rob = flight.robustness(target)
        origin_rob = flight.robustness(state.position)
        path = ra_star(state.position, target, state.belief, 0.0, p.beta)
        flight.decide("frontier_move", target, rob, origin_rob, "frontier", started)
        if not flight.follow(path, "frontier_move", rob):
            flight.go_home("reserve")

    return flight.trajectory
