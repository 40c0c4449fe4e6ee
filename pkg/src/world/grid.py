"""
Grid environment: a likelihood map over square cells plus the home cell.

Cells are (x, y) pairs; `likelihood[y, x]` holds the probability that the cell
is an area of interest. Row-major order means ordering by (y, x).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Iterator, Optional, Tuple

import numpy as np

Cell = Tuple[int, int]

DEFAULT_CELL_SIZE_M = 200.0
DEFAULT_TRUTH_THRESHOLD = 0.7


@dataclass(frozen=True)
class Blob:
    """A generated high-likelihood region: centre cell and radius in cells."""

    x: int
    y: int
    radius: float

    def contains(self, cell: Cell) -> bool:
        return euclidean_distance((self.x, self.y), cell) <= self.radius


@dataclass(frozen=True, eq=False)
class GridWorld:
    likelihood: np.ndarray
    home: Cell = (0, 0)
    cell_size: float = DEFAULT_CELL_SIZE_M
    aoi_threshold_truth: float = DEFAULT_TRUTH_THRESHOLD
    blobs: Tuple[Blob, ...] = ()
    name: str = ""

    def __post_init__(self):
        grid = np.array(self.likelihood, dtype=float, copy=True)
        if grid.ndim != 2 or grid.shape[0] < 1 or grid.shape[1] < 1:
            raise ValueError(f"Likelihood grid must be a non-empty 2D array, got shape {grid.shape}")
        if not np.isfinite(grid).all():
            raise ValueError("Likelihood grid contains non-finite values")
        if grid.min() < 0.0 or grid.max() > 1.0:
            raise ValueError(
                f"Likelihood values must lie in [0, 1]; found range [{grid.min():.4f}, {grid.max():.4f}]"
            )
        if not 0.0 <= self.aoi_threshold_truth <= 1.0:
            raise ValueError(f"aoi_threshold_truth must be in [0, 1], got {self.aoi_threshold_truth}")
        if self.cell_size <= 0:
            raise ValueError(f"cell_size must be positive, got {self.cell_size}")
        grid.setflags(write=False)
        object.__setattr__(self, "likelihood", grid)
        home = (int(self.home[0]), int(self.home[1]))
        object.__setattr__(self, "home", home)
        if not self.contains(home):
            raise ValueError(f"Home cell {home} is outside the {self.width}x{self.height} grid")

    @property
    def width(self) -> int:
        return int(self.likelihood.shape[1])

    @property
    def height(self) -> int:
        return int(self.likelihood.shape[0])

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.height, self.width)

    @property
    def diagonal(self) -> float:
        """Grid diagonal in cells."""
        return math.hypot(self.width, self.height)

    def contains(self, cell: Cell) -> bool:
        x, y = cell
        return 0 <= x < self.width and 0 <= y < self.height

    def value(self, cell: Cell) -> float:
        x, y = cell
        return float(self.likelihood[y, x])

    def with_home(self, cell: Cell) -> "GridWorld":
        return replace(self, home=(int(cell[0]), int(cell[1])))

    def aoi_mask(self, threshold: Optional[float] = None) -> np.ndarray:
        """Ground-truth AoI cells: likelihood >= threshold."""
        level = self.aoi_threshold_truth if threshold is None else threshold
        return self.likelihood >= level

    def blob_mask(self) -> np.ndarray:
        mask = np.zeros(self.shape, dtype=bool)
        ys, xs = np.mgrid[0 : self.height, 0 : self.width]
        for blob in self.blobs:
            mask |= np.hypot(xs - blob.x, ys - blob.y) <= blob.radius
        return mask

    def window(self, cell: Cell, radius: int) -> Tuple[slice, slice]:
        """Row/column slices of the Chebyshev ball of `radius` around cell, clipped to the grid."""
        x, y = cell
        rows = slice(max(0, y - radius), min(self.height, y + radius + 1))
        cols = slice(max(0, x - radius), min(self.width, x + radius + 1))
        return rows, cols

    def cells(self) -> Iterator[Cell]:
        """All cells in row-major order."""
        for y in range(self.height):
            for x in range(self.width):
                yield (x, y)


def euclidean_distance(a: Cell, b: Cell) -> float:
    """Straight-line distance in cell units."""
    return math.hypot(a[0] - b[0], a[1] - b[1])


def octile_distance(a: Cell, b: Cell) -> float:
    """Length of the shortest 8-connected path between two cells."""
    dx = abs(a[0] - b[0])
    dy = abs(a[1] - b[1])
    return abs(dx - dy) + math.sqrt(2.0) * min(dx, dy)


def row_major_key(cell: Cell) -> Tuple[int, int]:
    return (cell[1], cell[0])
