"""
Robustness-driven exploration loop.

Each decision runs a short Metropolis chain from the UAV's cell over the
mission robustness surface and flies to the first unvisited chain state.
Targets that clear rho (or beat the UAV's own cell) are logged as
`mcmc_move`, the rest as `mcmc_walk`. Once the UAV has spent `dwell_limit`
steps below lambda, only targets that clear that bar and lie above lambda
count. If the chain finds none within `alpha` proposals the decision stalls:
the UAV retargets to the best cached point, then (with `frontier_fallback`)
to the nearest frontier cell, and otherwise flies home and ends the mission.

Moves are expanded into unit steps along an RA* path; the UAV senses after
every step, so discoveries made en route feed the cache before the next
decision. A unit step is only taken while the battery still covers the
reserve plus the octile flight home from the new cell.
"""

from __future__ import annotations

import logging
import math
import time
from typing import Callable, Dict, Iterable, Optional, Sequence, Tuple

import numpy as np

from src.world import (
    Cell,
    GridWorld,
    MissionState,
    SensorModel,
    euclidean_distance,
    octile_distance,
    row_major_key,
    sense,
)

from .frontier import frontier_cells, nearest_frontier
from .mcmc import mcmc_step
from .pathing import ra_star
from .robustness import RdeParams, combined_robustness, neighbors
from .trajectory import PlannerEvent, StepRecord, Trajectory

LOGGER = logging.getLogger(__name__)

SQRT2 = math.sqrt(2.0)
# float slack for battery comparisons
_TOL = 1e-9


class EmptyCacheError(LookupError):
    """Raised when no cached point is left to retarget to."""


def update_cache_and_dwell(state: MissionState, newly_sensed: Iterable[Cell], params: RdeParams) -> MissionState:
    """
    Add newly sensed, unvisited cells with belief >= lambda to the cache, drop
    visited cells from it, and advance or reset the dwell counter.
    """
    known = {cell for cell, _ in state.cached}
    for cell in newly_sensed:
        value = state.belief_at(cell)
        if value >= params.lam and not state.is_visited(cell) and cell not in known:
            state.cached.append((cell, value))
            known.add(cell)

    state.cached = [(cell, value) for cell, value in state.cached if not state.is_visited(cell)]

    if state.belief_at(state.position) < params.lam:
        state.dwell += 1
    else:
        state.dwell = 0
    return state


def pop_cached_point(state: MissionState) -> Cell:
    """Remove and return the cached point with the highest belief, nearest first on ties."""
    if not state.cached:
        raise EmptyCacheError("No cached points left")
    best = min(
        range(len(state.cached)),
        key=lambda i: (
            -state.cached[i][1],
            euclidean_distance(state.position, state.cached[i][0]),
            row_major_key(state.cached[i][0]),
        ),
    )
    cell, _ = state.cached.pop(best)
    return cell


class Flight:
    """Battery, sensing and bookkeeping shared by every planner."""

    def __init__(
        self,
        planner: str,
        world: GridWorld,
        params: RdeParams,
        sensor: SensorModel,
        rng: np.random.Generator,
        steps: int,
        start: Optional[Cell] = None,
    ):
        if steps < 1:
            raise ValueError(f"Step budget must be >= 1, got {steps}")
        self.world = world
        self.params = params.resolved(world)
        self.sensor = sensor
        self.rng = rng
        self.b_min = float(self.params.b_min)
        start = world.home if start is None else start
        self.state = MissionState.initial(world, sensor, start, battery=float(steps))
        self.trajectory = Trajectory(
            planner=planner,
            grid_shape=world.shape,
            sensor_radius=sensor.radius,
            home=world.home,
        )
        self.finished = False

        newly = sense(world, sensor, self.state, rng=rng)
        update_cache_and_dwell(self.state, newly, self.params)
        self._record("start", self.robustness(start))
        self.trajectory.events.append(
            PlannerEvent("start", 0, self.state.position, self.trajectory.rows[0].robustness)
        )

    def robustness(self, cell: Cell) -> float:
        return combined_robustness(cell, self.state, self.params, self.world)

    def return_cost(self, cell: Cell) -> float:
        return octile_distance(cell, self.world.home) / self.params.speed

    def slack(self) -> float:
        return self.state.battery - self.return_cost(self.state.position) - self.b_min

    def reserve_ok(self, cell: Cell) -> bool:
        cost = euclidean_distance(self.state.position, cell) / self.params.speed
        return self.state.battery - cost - self.return_cost(cell) >= self.b_min - _TOL

    def _record(self, event: str, robustness: float) -> None:
        x, y = self.state.position
        self.trajectory.rows.append(
            StepRecord(self.state.time, x, y, self.state.battery, float(robustness), event)
        )
        if self.state.battery < euclidean_distance(self.state.position, self.world.home) / self.params.speed - _TOL:
            self.trajectory.safety_violations += 1
            LOGGER.warning(
                "Safety violation at t=%s: battery %.3f cannot reach home from %s",
                self.state.time,
                self.state.battery,
                self.state.position,
            )

    def step_to(self, cell: Cell, event: str, robustness: float) -> None:
        cost = euclidean_distance(self.state.position, cell) / self.params.speed
        self.state.battery -= cost
        self.state.time += 1
        self.state.position = cell
        self.state.mark_visited(cell)
        newly = sense(self.world, self.sensor, self.state, rng=self.rng)
        update_cache_and_dwell(self.state, newly, self.params)
        self._record(event, robustness)

    def follow(self, path: Sequence[Cell], event: str, robustness: float) -> bool:
        """Walk `path` under the reserve rule. False when the reserve cut the walk short."""
        for cell in path[1:]:
            if not self.reserve_ok(cell):
                LOGGER.debug("Reserve reached at %s before stepping to %s", self.state.position, cell)
                return False
            self.step_to(cell, event, robustness)
        return True

    def decide(self, kind: str, target: Cell, robustness: float, origin: float, trigger: str, started: float) -> None:
        self.trajectory.events.append(
            PlannerEvent(kind, self.state.time, target, float(robustness), float(origin), trigger)
        )
        self.trajectory.decision_durations.append(time.perf_counter() - started)

    def go_home(self, trigger: str, started: Optional[float] = None) -> None:
        """Fly the shortest path home, then close the mission."""
        home = self.world.home
        started = time.perf_counter() if started is None else started
        rob = self.robustness(home)
        self.decide("go_home", home, rob, self.robustness(self.state.position), trigger, started)

        path = ra_star(self.state.position, home, self.state.belief, 0.0, self.params.beta)
        for cell in path[1:]:
            cost = euclidean_distance(self.state.position, cell) / self.params.speed
            if self.state.battery - cost < -_TOL:
                self.trajectory.safety_violations += 1
                LOGGER.warning("Battery exhausted at %s on the way home", self.state.position)
                break
            self.step_to(cell, "go_home", rob)
        self.end()

    def end(self) -> None:
        self.state.time += 1
        self.trajectory.events.append(
            PlannerEvent("mission_end", self.state.time, self.state.position, self.robustness(self.state.position))
        )
        self._record("mission_end", self.trajectory.events[-1].robustness)
        self.finished = True
        LOGGER.debug(
            "%s mission ended at t=%s at %s with battery %.2f",
            self.trajectory.planner,
            self.state.time,
            self.state.position,
            self.state.battery,
        )

    def reserve_exhausted(self) -> bool:
        return self.slack() < SQRT2 / self.params.speed


def _sample_target(flight: Flight, f: Callable[[Cell], float]) -> Optional[Cell]:
    """
    Run up to alpha Metropolis proposals from the UAV's cell and return the
    first unvisited chain state it may fly to, or None on a stall.

    Below the dwell limit any unvisited state will do. Once the dwell limit is
    reached the state must also clear rho or beat the UAV's cell, and its
    belief must exceed lambda.
    """
    params = flight.params
    state = flight.state
    origin = state.position
    f_origin = f(origin)
    dwelling = state.dwell >= params.dwell_limit
    chain = origin
    for _ in range(params.alpha):
        nxt = mcmc_step(
            chain,
            f,
            params.rho,
            params.tau,
            neighbors(chain, flight.world),
            flight.rng,
            literal_sigma=params.literal_sigma,
        )
        if nxt == chain:
            continue
        chain = nxt
        if state.is_visited(nxt):
            continue
        if not dwelling:
            return nxt
        value = f(nxt)
        if (value > params.rho or value > f_origin) and state.belief_at(nxt) > params.lam:
            return nxt
    return None


def _stall_target(flight: Flight) -> Tuple[Optional[Cell], str]:
    """Best cached point, else the nearest frontier cell when the fallback is on."""
    state = flight.state
    try:
        return pop_cached_point(state), "cached_jump"
    except EmptyCacheError:
        pass
    if flight.params.frontier_fallback:
        target = nearest_frontier(frontier_cells(state.sensed, state.visited), state.position, state.belief)
        if target is not None:
            return target, "frontier_move"
    return None, "go_home"


def rde_run(
    world: GridWorld,
    params: RdeParams,
    sensor: SensorModel,
    rng: np.random.Generator,
    steps: int = 2000,
    start: Optional[Cell] = None,
) -> Trajectory:
    """
    Fly one robustness-driven exploration mission.

    Args:
        world: environment; the UAV returns to `world.home`.
        params: planner parameters (b_min resolved against `world`).
        sensor: field-of-view radius and prior.
        rng: the run's random generator; the only source of randomness.
        steps: battery budget in time steps.
        start: launch cell, defaults to home.

    Returns:
        The trajectory, ending with a stationary `mission_end` row.
    """
    flight = Flight("rde", world, params, sensor, rng, steps, start)
    p = flight.params

    while not flight.finished:
        started = time.perf_counter()
        if flight.reserve_exhausted():
            flight.go_home("reserve", started)
            break

        memo: Dict[Cell, float] = {}

        def f(cell: Cell) -> float:
            value = memo.get(cell)
            if value is None:
                value = flight.robustness(cell)
                memo[cell] = value
            return value

        origin_rob = f(flight.state.position)
        target = _sample_target(flight, f)
        if target is not None:
            rob = f(target)
            kind = "mcmc_move" if rob > p.rho or rob > origin_rob else "mcmc_walk"
            trigger = "mcmc"
        else:
            flight.trajectory.stalls += 1
            target, kind = _stall_target(flight)
            if target is None:
                if flight.state.time == 0:
                    LOGGER.warning("Mission stalled at launch cell %s: nothing to explore", flight.state.position)
                else:
                    LOGGER.debug("MCMC stalled at %s with nothing left to retarget to", flight.state.position)
                flight.go_home("stall", started)
                break
            rob, trigger = f(target), "stall"

        path = ra_star(flight.state.position, target, flight.state.belief, p.ra_weight, p.beta)
        flight.decide(kind, target, rob, origin_rob, trigger, started)
        LOGGER.debug("t=%s %s -> %s (robustness %.3f)", flight.state.time, kind, target, rob)
        if not flight.follow(path, kind, rob):
            flight.go_home("reserve")

    trajectory = flight.trajectory
    LOGGER.debug(
        "rde run: %d rows, %d stalls, %d safety violations",
        len(trajectory),
        trajectory.stalls,
        trajectory.safety_violations,
    )
    return trajectory
