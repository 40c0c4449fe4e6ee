"""Mission robustness, MCMC target sampling, path planning and the exploration planners."""

from .baseline import baseline_run
from .frontier import frontier_cells, nearest_frontier, select_frontier
from .mcmc import acceptance_probability, acceptance_ratio, make_rng, mcmc_step
from .pathing import EPSILON, PathNotFoundError, edge_cost, path_cost, ra_star
from .planner import EmptyCacheError, Flight, pop_cached_point, rde_run, update_cache_and_dwell
from .robustness import (
    MISSION_FORMULA_TEXT,
    RdeParams,
    aoi_distance,
    combined_robustness,
    conditional_rob,
    decision_trace,
    depth_battery,
    dist_aoi,
    liveness_rob,
    mission_formula,
    monitor_robustness,
    neighbors,
    safety_rob,
)
from .trajectory import EVENT_COLUMNS, EVENT_KINDS, TRAJECTORY_COLUMNS, TRIGGERS, PlannerEvent, StepRecord, Trajectory

__all__ = [
    "baseline_run",
    "frontier_cells",
    "nearest_frontier",
    "select_frontier",
    "acceptance_probability",
    "acceptance_ratio",
    "make_rng",
    "mcmc_step",
    "EPSILON",
    "PathNotFoundError",
    "edge_cost",
    "path_cost",
    "ra_star",
    "EmptyCacheError",
    "Flight",
    "pop_cached_point",
    "rde_run",
    "update_cache_and_dwell",
    "MISSION_FORMULA_TEXT",
    "RdeParams",
    "aoi_distance",
    "combined_robustness",
    "conditional_rob",
    "decision_trace",
    "depth_battery",
    "dist_aoi",
    "liveness_rob",
    "mission_formula",
    "monitor_robustness",
    "neighbors",
    "safety_rob",
    "EVENT_COLUMNS",
    "EVENT_KINDS",
    "TRAJECTORY_COLUMNS",
    "TRIGGERS",
    "PlannerEvent",
    "StepRecord",
    "Trajectory",
]
