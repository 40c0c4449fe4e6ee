"""
Mission robustness of a candidate move, evaluated one decision ahead.

The mission property is

    G[1,1] bat & F[1,1] aoi & (stuck -> (aoi | X aoi))

- bat: the UAV keeps enough battery to return home (signed distance
  `depth_battery`),
- aoi: the cell's estimated likelihood exceeds beta (`dist_aoi`),
- stuck: the UAV has spent `dwell_limit` consecutive steps on cells below
  lambda.

Each temporal operator collapses to a pointwise expression over the current
cell and the candidate, so `combined_robustness` is a closed form. The same
value is available through the generic monitor as `monitor_robustness`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import List, Optional

import numpy as np

from src.logic import Formula, Trace, parse_formula, robustness
from src.world import Cell, GridWorld, MissionState, euclidean_distance, row_major_key

MISSION_FORMULA_TEXT = "G[1,1] bat & F[1,1] aoi & (stuck -> (aoi | X aoi))"


@dataclass(frozen=True)
class RdeParams:
    """
    Planner parameters.

    Args:
        beta: AoI detection threshold on estimated likelihood.
        lam: dwell threshold; cells below it count toward the dwell counter
            and cells at or above it enter the cache.
        rho: robustness acceptance threshold.
        dwell_limit: consecutive low-likelihood steps before the conditional
            liveness clause becomes active.
        b_min: reserve battery in steps; None resolves to 2 * grid diagonal / speed.
        speed: cells travelled per battery step.
        tau: inverse temperature of the Metropolis acceptance rule.
        alpha: MCMC proposals per decision before the decision stalls.
        ra_weight: AoI attraction weight of the path planner.
        literal_sigma: use the negated acceptance exponent.
        baseline_c: distance penalty of the frontier baseline.
        frontier_fallback: on a stall with an empty cache, fly to the nearest
            frontier cell instead of ending the mission.
    """

    beta: float = 0.5
    lam: float = 0.3
    rho: float = 38.0
    dwell_limit: int = 10
    b_min: Optional[float] = None
    speed: float = 1.0
    tau: float = 0.1
    alpha: int = 16
    ra_weight: float = 0.5
    literal_sigma: bool = False
    baseline_c: float = 0.01
    frontier_fallback: bool = False

    def __post_init__(self):
        if not 0.0 < self.beta < 1.0:
            raise ValueError(f"beta must be in (0, 1), got {self.beta}")
        if not 0.0 < self.lam < 1.0:
            raise ValueError(f"lambda must be in (0, 1), got {self.lam}")
        if not self.rho > 0:
            raise ValueError(f"rho must be > 0, got {self.rho}")
        if int(self.dwell_limit) != self.dwell_limit or self.dwell_limit < 1:
            raise ValueError(f"dwell_limit must be an integer >= 1, got {self.dwell_limit}")
        if self.b_min is not None and (not math.isfinite(self.b_min) or self.b_min < 0):
            raise ValueError(f"b_min must be a finite value >= 0, got {self.b_min}")
        if not self.speed > 0:
            raise ValueError(f"speed must be > 0, got {self.speed}")
        if not self.tau > 0:
            raise ValueError(f"tau must be > 0, got {self.tau}")
        if int(self.alpha) != self.alpha or self.alpha < 1:
            raise ValueError(f"alpha must be an integer >= 1, got {self.alpha}")
        if self.ra_weight < 0:
            raise ValueError(f"ra_weight must be >= 0, got {self.ra_weight}")
        if self.baseline_c < 0:
            raise ValueError(f"baseline_c must be >= 0, got {self.baseline_c}")

    def resolve_b_min(self, world: GridWorld) -> float:
        if self.b_min is not None:
            return float(self.b_min)
        return 2.0 * world.diagonal / self.speed

    def resolved(self, world: GridWorld) -> "RdeParams":
        """Copy with b_min fixed for this world."""
        return replace(self, b_min=self.resolve_b_min(world))


def aoi_distance(p: float, beta: float) -> float:
    return (p - beta) * 100.0 if p > beta else 0.0


def dist_aoi(cell: Cell, belief: np.ndarray, beta: float) -> float:
    """Signed distance of `cell` to the AoI set: (p - beta) * 100 if p > beta, else 0."""
    return aoi_distance(float(belief[cell[1], cell[0]]), beta)


def depth_battery(cell: Cell, battery: float, b_min: float, speed: float, home: Cell) -> float:
    """Battery margin after flying home from `cell`, clamped at 0."""
    margin = (battery - b_min) - euclidean_distance(cell, home) / speed
    return margin if margin > 0 else 0.0


def safety_rob(cell: Cell, state: MissionState, params: RdeParams, world: GridWorld) -> float:
    return min(math.inf, depth_battery(cell, state.battery, params.resolve_b_min(world), params.speed, world.home))


def liveness_rob(cell: Cell, state: MissionState, params: RdeParams, world: Optional[GridWorld] = None) -> float:
    return min(math.inf, dist_aoi(cell, state.belief, params.beta))


def conditional_rob(cell: Cell, state: MissionState, params: RdeParams, world: Optional[GridWorld] = None) -> float:
    """+inf while the dwell counter is below its limit, else the better of staying or moving."""
    if state.dwell < params.dwell_limit:
        return math.inf
    return max(dist_aoi(state.position, state.belief, params.beta), dist_aoi(cell, state.belief, params.beta))


def combined_robustness(cell: Cell, state: MissionState, params: RdeParams, world: GridWorld) -> float:
    return min(
        safety_rob(cell, state, params, world),
        liveness_rob(cell, state, params, world),
        conditional_rob(cell, state, params, world),
    )


def neighbors(cell: Cell, world: GridWorld) -> List[Cell]:
    """8-connected neighbourhood clipped to the grid, in row-major order."""
    x, y = cell
    out = [
        (x + dx, y + dy)
        for dy in (-1, 0, 1)
        for dx in (-1, 0, 1)
        if (dx or dy) and world.contains((x + dx, y + dy))
    ]
    return sorted(out, key=row_major_key)


@lru_cache(maxsize=1)
def mission_formula() -> Formula:
    return parse_formula(MISSION_FORMULA_TEXT)


def decision_trace(cell: Cell, state: MissionState, params: RdeParams, world: GridWorld) -> Trace:
    """Two-sample trace of a decision: index 0 is the UAV's cell, index 1 the candidate."""
    bat = depth_battery(cell, state.battery, params.resolve_b_min(world), params.speed, world.home)
    stuck = math.inf if state.dwell >= params.dwell_limit else -math.inf
    return Trace(
        length=2,
        distances={
            "bat": [bat, bat],
            "aoi": [
                dist_aoi(state.position, state.belief, params.beta),
                dist_aoi(cell, state.belief, params.beta),
            ],
            "stuck": [stuck, stuck],
        },
    )


def monitor_robustness(cell: Cell, state: MissionState, params: RdeParams, world: GridWorld) -> float:
    """Robustness of the mission formula through the generic monitor."""
    return robustness(mission_formula(), decision_trace(cell, state, params, world), 0)
