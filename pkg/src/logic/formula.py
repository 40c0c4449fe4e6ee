"""
Formula abstract syntax for metric temporal logic over discrete time.

Core grammar: True, atoms, negation, conjunction, disjunction and the timed
Until. Implies, Always, Eventually and Next are derived operators; `desugar`
rewrites them into the core grammar.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union


class FormulaSyntaxError(ValueError):
    """Raised when formula text does not conform to the grammar."""

    def __init__(self, message: str, position: int = -1, expected=None):
        self.position = position
        self.expected = sorted(expected or [])
        detail = message
        if position >= 0:
            detail = f"{detail} (at position {position})"
        if self.expected:
            detail = f"{detail}; expected one of: {', '.join(self.expected)}"
        super().__init__(detail)


class UnknownAtomError(KeyError):
    """Raised when a formula references an atom the trace does not define."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(name)

    def __str__(self) -> str:
        return f"Unknown atom: {self.name!r}"


@dataclass(frozen=True)
class Interval:
    """Closed time window [lower, upper]; upper=None is unbounded."""

    lower: int
    upper: Optional[int] = None

    def __post_init__(self):
        if self.lower < 0:
            raise FormulaSyntaxError(f"Interval lower bound must be >= 0, got {self.lower}")
        if self.upper is not None and self.upper < self.lower:
            raise FormulaSyntaxError(
                f"Malformed interval [{self.lower},{self.upper}]: lower bound exceeds upper bound"
            )

    @property
    def unbounded(self) -> bool:
        return self.upper is None

    def __str__(self) -> str:
        upper = "inf" if self.upper is None else str(self.upper)
        return f"[{self.lower},{upper}]"


UNBOUNDED = Interval(0, None)
NEXT_STEP = Interval(1, 1)


@dataclass(frozen=True)
class TrueF:
    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class Atom:
    name: str

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class Not:
    child: "Formula"

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class Until:
    left: "Formula"
    right: "Formula"
    interval: Interval = UNBOUNDED

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class Always:
    child: "Formula"
    interval: Interval = UNBOUNDED

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class Eventually:
    child: "Formula"
    interval: Interval = UNBOUNDED

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class Next:
    child: "Formula"

    def __str__(self) -> str:
        return format_formula(self)


Formula = Union[TrueF, Atom, Not, And, Or, Implies, Until, Always, Eventually, Next]

CORE_NODES = (TrueF, Atom, Not, And, Or, Until)


def desugar(f: Formula) -> Formula:
    """
    Rewrite derived operators into the core grammar.

    F_I p  == T U_I p
    G_I p  == !(T U_I !p)
    X p    == T U_[1,1] p
    a -> b == !a | b
    """
    if isinstance(f, (TrueF, Atom)):
        return f
    if isinstance(f, Not):
        return Not(desugar(f.child))
    if isinstance(f, And):
        return And(desugar(f.left), desugar(f.right))
    if isinstance(f, Or):
        return Or(desugar(f.left), desugar(f.right))
    if isinstance(f, Until):
        return Until(desugar(f.left), desugar(f.right), f.interval)
    if isinstance(f, Implies):
        return Or(Not(desugar(f.left)), desugar(f.right))
    if isinstance(f, Eventually):
        return Until(TrueF(), desugar(f.child), f.interval)
    if isinstance(f, Always):
        return Not(Until(TrueF(), Not(desugar(f.child)), f.interval))
    if isinstance(f, Next):
        return Until(TrueF(), desugar(f.child), NEXT_STEP)
    raise TypeError(f"Not a formula node: {f!r}")


def is_core(f: Formula) -> bool:
    """True when f uses only True, Atom, Not, And, Or and Until."""
    if not isinstance(f, CORE_NODES):
        return False
    if isinstance(f, Not):
        return is_core(f.child)
    if isinstance(f, (And, Or, Until)):
        return is_core(f.left) and is_core(f.right)
    return True


def atoms(f: Formula) -> frozenset:
    """Names of all atoms referenced by f."""
    if isinstance(f, Atom):
        return frozenset([f.name])
    if isinstance(f, TrueF):
        return frozenset()
    if isinstance(f, (Not, Always, Eventually, Next)):
        return atoms(f.child)
    return atoms(f.left) | atoms(f.right)


def format_formula(f: Formula) -> str:
    """Concrete syntax that `parse_formula` reads back to the same tree."""
    if isinstance(f, TrueF):
        return "T"
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Not):
        return f"!{format_formula(f.child)}"
    if isinstance(f, And):
        return f"({format_formula(f.left)} & {format_formula(f.right)})"
    if isinstance(f, Or):
        return f"({format_formula(f.left)} | {format_formula(f.right)})"
    if isinstance(f, Implies):
        return f"({format_formula(f.left)} -> {format_formula(f.right)})"
    if isinstance(f, Until):
        return f"({format_formula(f.left)} U{f.interval} {format_formula(f.right)})"
    if isinstance(f, Always):
        return f"G{f.interval} {format_formula(f.child)}"
    if isinstance(f, Eventually):
        return f"F{f.interval} {format_formula(f.child)}"
    if isinstance(f, Next):
        return f"X {format_formula(f.child)}"
    raise TypeError(f"Not a formula node: {f!r}")
