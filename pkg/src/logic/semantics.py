"""
Boolean and quantitative (robustness) semantics over finite discrete traces.

Conventions for finite traces:
- An Until window [t+l, t+u] is intersected with [t, length-1]; an empty
  effective window is false / -inf.
- An unbounded upper bound reaches the last index of the trace.
- The left operand of Until must hold at every index strictly between t and
  the witness (open interval), in both semantics.

Signals are computed bottom-up as numpy arrays over all indices, one array per
subformula, so `robustness(f, tr, t)` is an index into `robustness_signal`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional

import numpy as np
import pandas as pd

from .formula import (
    And,
    Atom,
    Formula,
    Interval,
    Not,
    Or,
    TrueF,
    UnknownAtomError,
    Until,
    desugar,
    is_core,
)

ANCHORS = ("open", "closed")


@dataclass(frozen=True, eq=False)
class Trace:
    """
    Finite timed sequence of atom valuations.

    `distances[name][t]` is the signed distance of atom `name` at index t
    (may be +/-inf); `flags[name][t]` is its Boolean membership.
    """

    length: int
    distances: Mapping[str, np.ndarray]
    flags: Mapping[str, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        if self.length < 1:
            raise ValueError(f"Trace length must be positive, got {self.length}")

        distances: Dict[str, np.ndarray] = {}
        for name, values in self.distances.items():
            arr = np.asarray(values, dtype=float).reshape(-1)
            if arr.shape[0] != self.length:
                raise ValueError(
                    f"Atom {name!r} has {arr.shape[0]} samples, expected {self.length}"
                )
            if np.isnan(arr).any():
                raise ValueError(f"Atom {name!r} contains NaN distances")
            arr.setflags(write=False)
            distances[name] = arr

        flags: Dict[str, np.ndarray] = {}
        for name, values in self.flags.items():
            arr = np.asarray(values, dtype=bool).reshape(-1)
            if arr.shape[0] != self.length:
                raise ValueError(
                    f"Atom {name!r} has {arr.shape[0]} flags, expected {self.length}"
                )
            flags[name] = arr

        for name, dist in distances.items():
            if name not in flags:
                flags[name] = dist > 0
                continue
            flag = flags[name]
            if np.any((dist > 0) & ~flag) or np.any((dist < 0) & flag):
                raise ValueError(
                    f"Atom {name!r}: Boolean flags disagree with the sign of the distance"
                )
        for arr in flags.values():
            arr.setflags(write=False)

        object.__setattr__(self, "distances", distances)
        object.__setattr__(self, "flags", flags)

    @classmethod
    def from_frame(
        cls,
        df: pd.DataFrame,
        flags: Optional[Mapping[str, object]] = None,
    ) -> "Trace":
        """Build a trace from a frame with one signed-distance column per atom."""
        if df.empty:
            raise ValueError("Cannot build a trace from an empty frame")
        distances = {str(col): pd.to_numeric(df[col], errors="raise").to_numpy(dtype=float) for col in df.columns}
        return cls(length=len(df), distances=distances, flags=dict(flags or {}))

    def distance(self, name: str) -> np.ndarray:
        try:
            return self.distances[name]
        except KeyError:
            raise UnknownAtomError(name) from None

    def flag(self, name: str) -> np.ndarray:
        try:
            return self.flags[name]
        except KeyError:
            raise UnknownAtomError(name) from None


def _window(t: int, interval: Interval, length: int) -> range:
    start = t + interval.lower
    stop = length - 1 if interval.upper is None else min(t + interval.upper, length - 1)
    return range(start, stop + 1)


def _core(f: Formula) -> Formula:
    return f if is_core(f) else desugar(f)


class _RobustnessEvaluator:
    def __init__(self, trace: Trace, anchor: str):
        if anchor not in ANCHORS:
            raise ValueError(f"anchor must be one of {ANCHORS}, got {anchor!r}")
        self.trace = trace
        self.anchor = anchor
        self._memo: Dict[Formula, np.ndarray] = {}

    def signal(self, f: Formula) -> np.ndarray:
        cached = self._memo.get(f)
        if cached is not None:
            return cached
        out = self._compute(f)
        self._memo[f] = out
        return out

    def _compute(self, f: Formula) -> np.ndarray:
        n = self.trace.length
        if isinstance(f, TrueF):
            return np.full(n, np.inf)
        if isinstance(f, Atom):
            return self.trace.distance(f.name).copy()
        if isinstance(f, Not):
            return -self.signal(f.child)
        if isinstance(f, And):
            return np.minimum(self.signal(f.left), self.signal(f.right))
        if isinstance(f, Or):
            return np.maximum(self.signal(f.left), self.signal(f.right))
        if isinstance(f, Until):
            return self._until(f)
        raise TypeError(f"Not a core formula node: {f!r}")

    def _until(self, f: Until) -> np.ndarray:
        n = self.trace.length
        left = self.signal(f.left)
        right = self.signal(f.right)
        out = np.full(n, -np.inf)
        closed = self.anchor == "closed"
        for t in range(n):
            best = -np.inf
            # min of the left operand over (t, j); nxt is the first index not yet folded in
            guard = np.inf
            nxt = t + 1
            for j in _window(t, f.interval, n):
                if nxt < j:
                    guard = min(guard, float(left[nxt:j].min()))
                    nxt = j
                hold = min(guard, float(left[t])) if closed and j > t else guard
                best = max(best, min(float(right[j]), hold))
            out[t] = best
        return out


class _SatisfactionEvaluator:
    def __init__(self, trace: Trace):
        self.trace = trace
        self._memo: Dict[Formula, np.ndarray] = {}

    def signal(self, f: Formula) -> np.ndarray:
        cached = self._memo.get(f)
        if cached is not None:
            return cached
        out = self._compute(f)
        self._memo[f] = out
        return out

    def _compute(self, f: Formula) -> np.ndarray:
        n = self.trace.length
        if isinstance(f, TrueF):
            return np.ones(n, dtype=bool)
        if isinstance(f, Atom):
            return self.trace.flag(f.name).copy()
        if isinstance(f, Not):
            return ~self.signal(f.child)
        if isinstance(f, And):
            return self.signal(f.left) & self.signal(f.right)
        if isinstance(f, Or):
            return self.signal(f.left) | self.signal(f.right)
        if isinstance(f, Until):
            left = self.signal(f.left)
            right = self.signal(f.right)
            out = np.zeros(n, dtype=bool)
            for t in range(n):
                for j in _window(t, f.interval, n):
                    if right[j] and left[t + 1:j].all():
                        out[t] = True
                        break
            return out
        raise TypeError(f"Not a core formula node: {f!r}")


def robustness_signal(f: Formula, tr: Trace, anchor: str = "open") -> np.ndarray:
    """Robustness of f at every index of tr."""
    return _RobustnessEvaluator(tr, anchor).signal(_core(f))


def satisfaction_signal(f: Formula, tr: Trace) -> np.ndarray:
    """Boolean satisfaction of f at every index of tr."""
    return _SatisfactionEvaluator(tr).signal(_core(f))


def _check_index(tr: Trace, t: int) -> None:
    if not 0 <= t < tr.length:
        raise IndexError(f"Time index {t} outside trace of length {tr.length}")


def robustness(f: Formula, tr: Trace, t: int = 0, anchor: str = "open") -> float:
    """
    Quantitative semantics: T -> +inf, p -> signed distance, !f -> -f,
    | -> max, & -> min, Until -> max over the window of
    min(right at j, min of left strictly between t and j).

    anchor="closed" also includes index t in the left-operand minimum, as the
    expansion is sometimes printed; that variant is not sign-sound.
    """
    _check_index(tr, t)
    return float(robustness_signal(f, tr, anchor=anchor)[t])


def boolean_sat(f: Formula, tr: Trace, t: int = 0) -> bool:
    """Boolean semantics with atoms resolved through the trace flags."""
    _check_index(tr, t)
    return bool(satisfaction_signal(f, tr)[t])
