"""
Concrete syntax for formulas, parsed with an LALR grammar.

Atoms are lowercase identifiers. Operators, tightest first:
    unary (! , G[l,u], F[l,u], X), U[l,u], &, |, ->
`&`, `|` and `U` associate to the left, `->` to the right. `inf` is accepted
as an upper bound. `T` is the Boolean True.
"""

from __future__ import annotations

from functools import lru_cache

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, VisitError

from .formula import (
    And,
    Atom,
    Always,
    Eventually,
    Formula,
    FormulaSyntaxError,
    Implies,
    Interval,
    Next,
    Not,
    Or,
    TrueF,
    Until,
)

GRAMMAR = r"""
    ?start: implies

    ?implies: disj
            | disj "->" implies      -> implies_op

    ?disj: conj
         | disj "|" conj             -> or_op

    ?conj: until
         | conj "&" until            -> and_op

    ?until: unary
          | until "U" interval unary -> until_op

    ?unary: "!" unary                -> not_op
          | "G" interval unary       -> always_op
          | "F" interval unary       -> eventually_op
          | "X" unary                -> next_op
          | "T"                      -> true_op
          | ATOM                     -> atom
          | "(" implies ")"

    interval: "[" INT "," bound "]"
    ?bound: INT | INF

    INF: "inf"
    ATOM: /[a-z][a-z0-9_]*/

    %import common.INT
    %import common.WS
    %ignore WS
"""


@v_args(inline=True)
class _FormulaBuilder(Transformer):
    def interval(self, lower, upper):
        upper_value = None if str(upper) == "inf" else int(upper)
        return Interval(int(lower), upper_value)

    def implies_op(self, left, right):
        return Implies(left, right)

    def or_op(self, left, right):
        return Or(left, right)

    def and_op(self, left, right):
        return And(left, right)

    def until_op(self, left, interval, right):
        return Until(left, right, interval)

    def not_op(self, child):
        return Not(child)

    def always_op(self, interval, child):
        return Always(child, interval)

    def eventually_op(self, interval, child):
        return Eventually(child, interval)

    def next_op(self, child):
        return Next(child)

    def true_op(self):
        return TrueF()

    def atom(self, name):
        return Atom(str(name))


@lru_cache(maxsize=1)
def _parser() -> Lark:
    return Lark(GRAMMAR, parser="lalr", start="start", propagate_positions=False)


def _error_position(exc: UnexpectedInput) -> int:
    pos = getattr(exc, "pos_in_stream", None)
    if pos is None or pos < 0:
        return -1
    return int(pos)


def parse_formula(text: str) -> Formula:
    """
    Parse formula text into its syntax tree.

    Raises FormulaSyntaxError with the failing character offset and the
    tokens the grammar would have accepted there.
    """
    if not text or not text.strip():
        raise FormulaSyntaxError("Empty formula", position=0)

    try:
        tree = _parser().parse(text)
    except UnexpectedEOF as exc:
        raise FormulaSyntaxError(
            "Unexpected end of formula", position=len(text), expected=exc.expected
        ) from None
    except UnexpectedCharacters as exc:
        raise FormulaSyntaxError(
            f"Unexpected character {text[exc.pos_in_stream]!r}",
            position=_error_position(exc),
            expected=exc.allowed,
        ) from None
    except UnexpectedInput as exc:
        token = getattr(exc, "token", None)
        expected = getattr(exc, "expected", None) or getattr(exc, "accepts", None)
        position = _error_position(exc)
        if token is not None and getattr(token, "type", "") == "$END":
            position = len(text)
        raise FormulaSyntaxError(
            f"Unexpected token {str(token)!r}" if token is not None else "Syntax error",
            position=position,
            expected=expected,
        ) from None

    try:
        return _FormulaBuilder().transform(tree)
    except VisitError as exc:
        if isinstance(exc.orig_exc, FormulaSyntaxError):
            raise exc.orig_exc from None
        raise
