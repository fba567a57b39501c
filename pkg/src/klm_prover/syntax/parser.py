"""Concrete-syntax parser for formulas and knowledge bases.

Grammar (loosest binding last)::

    atom     := identifier
    unary    := "~" unary | atom | "(" formula ")"
    and      := unary ("&" unary)*
    or       := and ("|" and)*
    implies  := or ("->" implies)?
    formula  := implies ("|~" implies)?
"""

import logging
from dataclasses import dataclass, field
from typing import List, Tuple

from pyparsing import (
    OpAssoc,
    ParseBaseException,
    ParseFatalException,
    ParserElement,
    Regex,
    Suppress,
    Word,
    alphanums,
    alphas,
    infix_notation,
)

from ..shared.errors import FormulaSyntaxError, KnowledgeBaseError
from .formulas import And, Atom, Cond, Formula, Implies, Neg, Or, is_propositional

logger = logging.getLogger(__name__)

ParserElement.enable_packrat()

COMMENT_CHAR = "#"


@dataclass(frozen=True)
class KnowledgeBase:
    """Parsed knowledge base: one assertion per non-blank line."""

    assertions: Tuple[Formula, ...] = ()
    lines: Tuple[int, ...] = field(default=())

    def __len__(self) -> int:
        return len(self.assertions)

    def __iter__(self):
        return iter(self.assertions)


# -----------------------------------------------------
# Parse actions
# -----------------------------------------------------


def _make_atom(toks) -> Formula:
    return Atom(toks[0])


def _make_neg(toks) -> Formula:
    items = list(toks[0])
    result = items[-1]
    for _ in items[:-1]:
        result = Neg(result)
    return result


def _left_fold(constructor):
    def action(toks) -> Formula:
        items = list(toks[0])
        result = items[0]
        for operand in items[2::2]:
            result = constructor(result, operand)
        return result

    return action


def _make_implies(toks) -> Formula:
    items = list(toks[0])
    result = items[-1]
    for operand in reversed(items[:-1:2]):
        result = Implies(operand, result)
    return result


def _make_cond(s: str, loc: int, toks) -> Formula:
    items = list(toks[0])
    operands = items[::2]
    if len(operands) > 2:
        raise ParseFatalException(s, loc, "conditional operand of a conditional")
    ante, cons = operands
    for operand in (ante, cons):
        if isinstance(operand, Cond):
            raise ParseFatalException(s, loc, "conditional operand of a conditional")
        if not is_propositional(operand):
            raise ParseFatalException(s, loc, "conditional inside conditional")
    return Cond(ante, cons)


def _build_grammar() -> ParserElement:
    identifier = Word(alphas + "_", alphanums + "_").set_name("atom")
    identifier.set_parse_action(_make_atom)
    return infix_notation(
        identifier,
        [
            (Regex(r"~"), 1, OpAssoc.RIGHT, _make_neg),
            (Regex(r"&"), 2, OpAssoc.LEFT, _left_fold(And)),
            (Regex(r"\|(?!~)"), 2, OpAssoc.LEFT, _left_fold(Or)),
            (Regex(r"->"), 2, OpAssoc.RIGHT, _make_implies),
            (Regex(r"\|~"), 2, OpAssoc.LEFT, _make_cond),
        ],
        lpar=Suppress("("),
        rpar=Suppress(")"),
    )


FORMULA = _build_grammar()


# -----------------------------------------------------
# Public API
# -----------------------------------------------------


def parse_formula(text: str) -> Formula:
    """Parse one formula.

    Args:
        text: Formula in the concrete syntax, e.g. ``"adult |~ worker"``

    Returns:
        Formula AST

    Raises:
        FormulaSyntaxError: On malformed input or a conditional nested in a
            conditional; ``position`` is the offending offset
    """
    if not text.strip():
        raise FormulaSyntaxError("empty formula", position=0)
    try:
        result = FORMULA.parse_string(text, parse_all=True)
    except ParseBaseException as e:
        raise FormulaSyntaxError(e.msg, position=e.loc) from e
    return result[0]


def parse_kb(text: str) -> KnowledgeBase:
    """Parse a knowledge base: one assertion per line, ``#`` comments.

    Args:
        text: Knowledge base source

    Returns:
        KnowledgeBase with the assertions and their line numbers

    Raises:
        KnowledgeBaseError: Aggregating every failing line
    """
    assertions: List[Formula] = []
    lines: List[int] = []
    errors: List[FormulaSyntaxError] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        content = raw.split(COMMENT_CHAR, 1)[0]
        if not content.strip():
            continue
        try:
            assertions.append(parse_formula(content))
            lines.append(lineno)
        except FormulaSyntaxError as e:
            errors.append(FormulaSyntaxError(e.message, position=e.position, line=lineno))
    if errors:
        logger.debug(f"[PARSER] {len(errors)} malformed knowledge base line(s)")
        raise KnowledgeBaseError(errors)
    return KnowledgeBase(assertions=tuple(assertions), lines=tuple(lines))
