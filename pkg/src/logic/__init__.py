"""Metric temporal logic: formulas, parsing and finite-trace semantics."""

from .formula import (
    And,
    Always,
    Atom,
    Eventually,
    Formula,
    FormulaSyntaxError,
    Implies,
    Interval,
    Next,
    Not,
    Or,
    TrueF,
    UnknownAtomError,
    Until,
    atoms,
    desugar,
    format_formula,
    is_core,
)
from .parser import parse_formula
from .semantics import Trace, boolean_sat, robustness, robustness_signal, satisfaction_signal

__all__ = [
    "And",
    "Always",
    "Atom",
    "Eventually",
    "Formula",
    "FormulaSyntaxError",
    "Implies",
    "Interval",
    "Next",
    "Not",
    "Or",
    "TrueF",
    "UnknownAtomError",
    "Until",
    "atoms",
    "desugar",
    "format_formula",
    "is_core",
    "parse_formula",
    "Trace",
    "boolean_sat",
    "robustness",
    "robustness_signal",
    "satisfaction_signal",
]
