"""
Seeded multi-trial experiment runner.

Trial i uses seed = base seed + i. The launch cell is drawn from a generator
on that seed and doubles as home; every planner then gets a fresh generator
on the same seed, so planner=both compares the planners on paired trials.

Artifacts written to the output directory:
- trial_<i>_<planner>.csv   one row per unit step (t,x,y,battery,robustness,event)
- events_<planner>.csv      one row per decision of every trial, with its trigger
- coverage_<planner>.csv    t, trial_<k> columns, median
- heatmap_<planner>.csv     per-cell visit counts, one grid row per line
- summary.json              deterministic report scalars
- timing.json               decision latency (wall clock, not reproducible)
"""

from __future__ import annotations

import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Tuple

import numpy as np
import pandas as pd
from tqdm import tqdm

from src.analysis import (
    coverage_curve,
    coverage_table,
    latency_stats,
    paired_comparison,
    summarize_planner,
    visit_heatmap,
)
from src.control import EVENT_COLUMNS, RdeParams, Trajectory, baseline_run, make_rng, rde_run
from src.data import ExperimentConfig
from src.world import Cell, GridWorld, SensorModel, resolve_map

LOGGER = logging.getLogger(__name__)

PLANNER_RUNS: Dict[str, Callable[..., Trajectory]] = {
    "rde": rde_run,
    "baseline": baseline_run,
}


@dataclass
class CoverageReport:
    """In-memory results of one experiment; `summary` mirrors summary.json."""

    curves: Dict[str, List[pd.DataFrame]] = field(default_factory=dict)
    coverage: Dict[str, pd.DataFrame] = field(default_factory=dict)
    heatmaps: Dict[str, np.ndarray] = field(default_factory=dict)
    latency: Dict[str, Dict[str, float]] = field(default_factory=dict)
    summary: Dict[str, object] = field(default_factory=dict)
    trajectories: Dict[str, List[Trajectory]] = field(default_factory=dict)
    written: List[Path] = field(default_factory=list)

    def final_coverage(self, planner: str) -> List[float]:
        return [float(curve["coverage"].iloc[-1]) for curve in self.curves[planner]]


def draw_start(world: GridWorld, seed: int) -> Cell:
    rng = make_rng(seed)
    return (int(rng.integers(world.width)), int(rng.integers(world.height)))


def run_trial(
    world: GridWorld,
    params: RdeParams,
    sensor: SensorModel,
    planners: Tuple[str, ...],
    steps: int,
    seed: int,
) -> Dict[str, Trajectory]:
    """Run each planner once from the seed's launch cell."""
    start = draw_start(world, seed)
    trial_world = world.with_home(start)
    out = {}
    for planner in planners:
        out[planner] = PLANNER_RUNS[planner](trial_world, params, sensor, make_rng(seed), steps=steps, start=start)
    return out


def _run_trial_args(args) -> Dict[str, Trajectory]:
    return run_trial(*args)


def _write_json(path: Path, payload: Dict[str, object]) -> Path:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def run_experiment(config: ExperimentConfig, workers: int = 1, progress: bool = True) -> CoverageReport:
    """
    Run every trial of `config`, write the artifacts and return the report.

    Output bytes other than timing.json depend only on the config.
    """
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")

    world = resolve_map(config.map_source, aoi_threshold_truth=config.truth_threshold)
    params = config.rde_params()
    sensor = config.sensor_model()
    planners = config.planners
    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    aoi_cells = int(world.aoi_mask().sum())
    if aoi_cells == 0:
        LOGGER.warning("Map %s has no cells with likelihood >= %s", config.map_source, config.truth_threshold)
    LOGGER.info(
        "Running %s trial(s) of %s on %sx%s map %s",
        config.trials,
        "/".join(planners),
        world.width,
        world.height,
        config.map_source,
    )

    jobs = [(world, params, sensor, planners, config.steps, config.seed + i) for i in range(config.trials)]
    bar = dict(total=config.trials, desc="trials", unit="trial", disable=not progress)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(tqdm(pool.map(_run_trial_args, jobs), **bar))
    else:
        results = [_run_trial_args(job) for job in tqdm(jobs, **bar)]

    report = CoverageReport()
    for planner in planners:
        trajectories = [result[planner] for result in results]
        visited_only = config.coverage == "visited"
        curves = [coverage_curve(t, world, config.truth_threshold, visited_only=visited_only) for t in trajectories]
        report.trajectories[planner] = trajectories
        report.curves[planner] = curves

        for i, trajectory in enumerate(trajectories):
            path = out_dir / f"trial_{i}_{planner}.csv"
            trajectory.to_frame().to_csv(path, index=False)
            report.written.append(path)

        events = pd.concat(
            [trajectory.events_frame().assign(trial=i) for i, trajectory in enumerate(trajectories)],
            ignore_index=True,
        )
        path = out_dir / f"events_{planner}.csv"
        events[["trial", *EVENT_COLUMNS]].to_csv(path, index=False)
        report.written.append(path)

        table = coverage_table(curves)
        report.coverage[planner] = table
        path = out_dir / f"coverage_{planner}.csv"
        table.to_csv(path, index=False)
        report.written.append(path)

        heat = visit_heatmap(trajectories)
        report.heatmaps[planner] = heat
        path = out_dir / f"heatmap_{planner}.csv"
        pd.DataFrame(heat).to_csv(path, header=False, index=False)
        report.written.append(path)

        report.latency[planner] = latency_stats(
            [d for trajectory in trajectories for d in trajectory.decision_durations]
        )
        summary = summarize_planner(trajectories, curves)
        report.summary.setdefault("planners", {})[planner] = summary
        LOGGER.info(
            "%s: median final coverage %.3f over %d trial(s), %d safety violation(s)",
            planner,
            summary["median_final_coverage"],
            summary["trials"],
            summary["safety_violations"],
        )

    report.summary["config"] = config.to_dict()
    report.summary["map"] = {
        "source": config.map_source,
        "width": world.width,
        "height": world.height,
        "aoi_cells": aoi_cells,
        "b_min": params.resolve_b_min(world),
    }
    if "rde" in planners and "baseline" in planners:
        report.summary["comparison"] = paired_comparison(
            report.final_coverage("rde"), report.final_coverage("baseline")
        )

    report.written.append(_write_json(out_dir / "summary.json", report.summary))
    report.written.append(_write_json(out_dir / "timing.json", report.latency))
    return report
