"""Experiment runner and command-line interface."""

from .cli import build_parser, main
from .runner import PLANNER_RUNS, CoverageReport, draw_start, run_experiment, run_trial

__all__ = [
    "build_parser",
    "main",
    "PLANNER_RUNS",
    "CoverageReport",
    "draw_start",
    "run_experiment",
    "run_trial",
]
