"""
Exploration metrics: AoI coverage over time, visit heat maps and decision
latency.
"""

from __future__ import annotations

import logging
from typing import Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from src.control import Trajectory
from src.world import GridWorld

LOGGER = logging.getLogger(__name__)


def coverage_curve(
    trajectory: Trajectory,
    world: GridWorld,
    truth_threshold: Optional[float] = None,
    visited_only: bool = False,
) -> pd.DataFrame:
    """
    Fraction of ground-truth AoI cells covered up to each trajectory row.

    A cell is covered once it lies in the sensor footprint of some row (or,
    with `visited_only`, once the UAV has occupied it). Worlds without AoI
    cells report 1.0 throughout.

    Returns:
        DataFrame with columns [t, coverage].
    """
    if trajectory.grid_shape != world.shape:
        raise ValueError(
            f"Trajectory grid {trajectory.grid_shape} does not match world grid {world.shape}"
        )
    aoi = world.aoi_mask(truth_threshold)
    total = int(aoi.sum())
    times = [row.t for row in trajectory.rows]
    if total == 0:
        LOGGER.warning("World %r has no AoI cells; coverage is 1.0 throughout", world.name)
        return pd.DataFrame({"t": times, "coverage": np.ones(len(times))})

    covered = np.zeros(world.shape, dtype=bool)
    values = np.empty(len(times))
    radius = trajectory.sensor_radius
    for i, row in enumerate(trajectory.rows):
        if visited_only:
            covered[row.y, row.x] = True
        else:
            rows, cols = world.window(row.cell, radius)
            covered[rows, cols] = True
        values[i] = np.count_nonzero(covered & aoi) / total
    return pd.DataFrame({"t": times, "coverage": values})


def coverage_table(curves: Sequence[pd.DataFrame]) -> pd.DataFrame:
    """
    One column per trial (`trial_<k>`) plus the per-step median, on a shared
    time axis. A finished mission's last value is carried forward.
    """
    if not curves:
        raise ValueError("At least one coverage curve is required")
    horizon = max(int(curve["t"].max()) for curve in curves)
    index = pd.RangeIndex(0, horizon + 1, name="t")
    columns = {
        f"trial_{k}": curve.set_index("t")["coverage"].reindex(index).ffill()
        for k, curve in enumerate(curves)
    }
    table = pd.concat(columns, axis=1)
    table["median"] = table.median(axis=1)
    return table.reset_index()


def visit_heatmap(trajectories: Sequence[Trajectory]) -> np.ndarray:
    """Per-cell count of trajectory rows, summed over all trajectories."""
    if not trajectories:
        raise ValueError("At least one trajectory is required")
    shape = trajectories[0].grid_shape
    counts = np.zeros(shape, dtype=np.int64)
    for trajectory in trajectories:
        if trajectory.grid_shape != shape:
            raise ValueError(
                f"Mismatched grids: {trajectory.grid_shape} vs {shape}"
            )
        for row in trajectory.rows:
            counts[row.y, row.x] += 1
    return counts


def heatmap_mass_fraction(heatmap: np.ndarray, mask: np.ndarray) -> float:
    """Share of all visits that fall inside `mask`."""
    total = heatmap.sum()
    if total == 0:
        return 0.0
    return float(heatmap[mask].sum() / total)


def latency_stats(durations_s: Sequence[float]) -> Dict[str, float]:
    """Mean and 95th percentile decision latency in microseconds."""
    if len(durations_s) == 0:
        return {"decisions": 0, "mean_us": 0.0, "p95_us": 0.0}
    micros = np.asarray(durations_s, dtype=float) * 1e6
    return {
        "decisions": int(micros.size),
        "mean_us": float(micros.mean()),
        "p95_us": float(np.percentile(micros, 95)),
    }


def relative_difference(value: float, reference: float) -> Optional[float]:
    """(value - reference) / reference, or None when the reference is 0."""
    if reference == 0:
        return None
    return float((value - reference) / reference)


def summarize_planner(trajectories: Sequence[Trajectory], curves: Sequence[pd.DataFrame]) -> Dict[str, object]:
    finals = np.array([float(curve["coverage"].iloc[-1]) for curve in curves])
    counts: Dict[str, int] = {}
    for trajectory in trajectories:
        for kind, n in trajectory.event_counts().items():
            counts[kind] = counts.get(kind, 0) + n

    return {
        "trials": len(trajectories),
        "final_coverage": [float(v) for v in finals],
        "median_final_coverage": float(np.median(finals)),
        "mean_final_coverage": float(finals.mean()),
        "event_counts": counts,
        "stalls": int(sum(t.stalls for t in trajectories)),
        "safety_violations": int(sum(t.safety_violations for t in trajectories)),
        "missions_ended_at_home": int(sum(t.ended_at_home for t in trajectories)),
        "mean_steps": float(np.mean([len(t) for t in trajectories])),
    }


def paired_comparison(rde_finals: Sequence[float], baseline_finals: Sequence[float]) -> Dict[str, object]:
    """Trial-paired comparison of final coverage between the two planners."""
    rde = np.asarray(rde_finals, dtype=float)
    base = np.asarray(baseline_finals, dtype=float)
    if rde.shape != base.shape:
        raise ValueError(f"Unpaired results: {rde.size} RDE vs {base.size} baseline trials")
    wins: List[bool] = list(rde > base)
    return {
        "rde_win_fraction": float(np.mean(wins)) if wins else 0.0,
        "median_relative_difference": relative_difference(float(np.median(rde)), float(np.median(base))),
        "mean_relative_difference": relative_difference(float(rde.mean()), float(base.mean())),
    }
