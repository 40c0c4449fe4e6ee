"""Coverage, heat-map and latency metrics over planner trajectories."""

from .metrics import (
    coverage_curve,
    coverage_table,
    heatmap_mass_fraction,
    latency_stats,
    paired_comparison,
    relative_difference,
    summarize_planner,
    visit_heatmap,
)

__all__ = [
    "coverage_curve",
    "coverage_table",
    "heatmap_mass_fraction",
    "latency_stats",
    "paired_comparison",
    "relative_difference",
    "summarize_planner",
    "visit_heatmap",
]
