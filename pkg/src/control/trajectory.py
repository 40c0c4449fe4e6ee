"""Flight records produced by the planners."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import pandas as pd

from src.world import Cell

EVENT_KINDS = ("start", "mcmc_move", "mcmc_walk", "cached_jump", "go_home", "frontier_move", "mission_end")
EVENT_COLUMNS = ["step", "kind", "x", "y", "robustness", "origin_robustness", "trigger"]
TRIGGERS = ("mcmc", "stall", "reserve", "frontier", "exhausted")
TRAJECTORY_COLUMNS = ["t", "x", "y", "battery", "robustness", "event"]


@dataclass(frozen=True)
class PlannerEvent:
    """
    One planner decision.

    `robustness` is the mission robustness of the chosen cell and
    `origin_robustness` that of the UAV's cell when the decision was taken.
    `mcmc_move` marks a chain target that clears rho or beats the UAV's cell;
    any other chain target is an `mcmc_walk`.
    """

    kind: str
    step: int
    cell: Cell
    robustness: float
    origin_robustness: float = math.nan
    trigger: str = ""

    def __post_init__(self):
        if self.kind not in EVENT_KINDS:
            raise ValueError(f"Unknown event kind {self.kind!r}; expected one of {EVENT_KINDS}")
        if self.trigger and self.trigger not in TRIGGERS:
            raise ValueError(f"Unknown event trigger {self.trigger!r}; expected one of {TRIGGERS}")


@dataclass(frozen=True)
class StepRecord:
    t: int
    x: int
    y: int
    battery: float
    robustness: float
    event: str

    @property
    def cell(self) -> Cell:
        return (self.x, self.y)


@dataclass
class Trajectory:
    """
    Ordered unit steps of one flight plus its decision log.

    Row 0 is the launch cell; the last row is a stationary `mission_end` row.
    `decision_durations` holds wall-clock seconds per decision and is not
    part of the CSV export.
    """

    planner: str
    grid_shape: Tuple[int, int]
    sensor_radius: int
    home: Cell
    rows: List[StepRecord] = field(default_factory=list)
    events: List[PlannerEvent] = field(default_factory=list)
    decision_durations: List[float] = field(default_factory=list)
    stalls: int = 0
    safety_violations: int = 0

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def cells(self) -> List[Cell]:
        return [row.cell for row in self.rows]

    @property
    def final_cell(self) -> Cell:
        return self.rows[-1].cell

    @property
    def ended_at_home(self) -> bool:
        return bool(self.rows) and self.final_cell == self.home

    def event_counts(self) -> Dict[str, int]:
        counts = Counter(event.kind for event in self.events)
        return {kind: int(counts.get(kind, 0)) for kind in EVENT_KINDS}

    def stall_resolutions(self) -> int:
        """Decisions taken because the chain stalled: cache jumps, frontier fallbacks and stall returns."""
        return sum(1 for event in self.events if event.trigger == "stall")

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [(r.t, r.x, r.y, r.battery, r.robustness, r.event) for r in self.rows],
            columns=TRAJECTORY_COLUMNS,
        )

    def events_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [
                (e.step, e.kind, e.cell[0], e.cell[1], e.robustness, e.origin_robustness, e.trigger)
                for e in self.events
            ],
            columns=EVENT_COLUMNS,
        )
