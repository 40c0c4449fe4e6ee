"""
One Metropolis step over the neighbour set of a cell.

Proposals are uniform over the neighbours. A proposal that clears the
robustness threshold and improves on the current cell is taken outright;
otherwise it is accepted with the Gibbs-Boltzmann probability
exp(tau * (f(s') - f(s))).
"""

from __future__ import annotations

import math
from typing import Callable, Optional, Sequence

import numpy as np

from src.world import Cell

RobustnessFn = Callable[[Cell], float]


def make_rng(seed: Optional[int]) -> np.random.Generator:
    """Seeded PCG64 generator; identical seeds give identical call sequences."""
    return np.random.default_rng(seed)


def _delta(proposed: float, current: float) -> float:
    with np.errstate(invalid="ignore"):
        delta = proposed - current
    # inf - inf: both cells equally (un)bounded
    return 0.0 if math.isnan(delta) else delta


def acceptance_ratio(delta: float, tau: float, literal: bool = False) -> float:
    """sigma = exp(tau * delta), or exp(-tau * delta) with `literal`. May exceed 1."""
    exponent = -tau * delta if literal else tau * delta
    with np.errstate(over="ignore"):
        return float(np.exp(exponent))


def acceptance_probability(delta: float, tau: float, literal: bool = False) -> float:
    return min(1.0, acceptance_ratio(delta, tau, literal))


def mcmc_step(
    current: Cell,
    f: RobustnessFn,
    rho: float,
    tau: float,
    neighbors: Sequence[Cell],
    rng: np.random.Generator,
    literal_sigma: bool = False,
) -> Cell:
    """
    Propose one neighbour and return it if accepted, else `current`.

    Draws exactly one integer for the proposal and, when the first branch
    does not fire, exactly one uniform for the acceptance test.
    """
    if len(neighbors) == 0:
        raise ValueError(f"Cell {current} has no neighbours to propose")
    if not tau > 0:
        raise ValueError(f"tau must be > 0, got {tau}")

    proposal = neighbors[int(rng.integers(len(neighbors)))]
    f_new = f(proposal)
    f_cur = f(current)
    if f_new > rho and f_new > f_cur:
        return proposal

    sigma = acceptance_ratio(_delta(f_new, f_cur), tau, literal_sigma)
    r = rng.random()
    return proposal if r < sigma else current
