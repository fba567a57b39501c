"""Formula AST for the conditional languages of C, CL, P and R.

Formulas are immutable and compared structurally, so they can live in
frozensets (tableau nodes) and serve as dictionary keys.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import FrozenSet, Iterable, Iterator, Set, Union


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Neg:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Cond:
    """Conditional assertion ``ante |~ cons``."""

    ante: "Formula"
    cons: "Formula"


@dataclass(frozen=True)
class BoxNeg:
    """Box-negation: ``BoxNeg(A)`` reads "no preferred point satisfies A"."""

    body: "Formula"


@dataclass(frozen=True)
class LMod:
    """State modality: ``LMod(A)`` reads "every world of the state satisfies A"."""

    body: "Formula"


Formula = Union[Atom, Neg, And, Or, Implies, Cond, BoxNeg, LMod]


# -----------------------------------------------------
# Structural helpers
# -----------------------------------------------------


def children(f: Formula) -> tuple:
    """Immediate subformulas of ``f``."""
    if isinstance(f, Atom):
        return ()
    if isinstance(f, (Neg, BoxNeg, LMod)):
        return (f.body,)
    if isinstance(f, Cond):
        return (f.ante, f.cons)
    return (f.left, f.right)


def subformulas(f: Formula) -> Iterator[Formula]:
    """Yield ``f`` and all its subformulas, parents first."""
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(reversed(children(g)))


@lru_cache(maxsize=None)
def is_propositional(f: Formula) -> bool:
    """True if ``f`` is built from atoms with boolean connectives only."""
    if isinstance(f, Atom):
        return True
    if isinstance(f, (Cond, BoxNeg, LMod)):
        return False
    return all(is_propositional(c) for c in children(f))


def atoms_of(formulas: Iterable[Formula]) -> FrozenSet[str]:
    """Names of all atoms occurring in ``formulas``."""
    names: Set[str] = set()
    for f in formulas:
        names.update(g.name for g in subformulas(f) if isinstance(g, Atom))
    return frozenset(names)


def size(formulas: Iterable[Formula]) -> int:
    """Total number of AST nodes; used as the small-model bound for R."""
    return sum(sum(1 for _ in subformulas(f)) for f in formulas)


def negate(f: Formula) -> Formula:
    return Neg(f)


def conjoin(formulas: Iterable[Formula]) -> Formula:
    """Left-nested conjunction of a nonempty sequence of formulas."""
    items = list(formulas)
    if not items:
        raise ValueError("cannot conjoin an empty sequence")
    result = items[0]
    for f in items[1:]:
        result = And(result, f)
    return result


@lru_cache(maxsize=None)
def complexity_cp(f: Formula) -> int:
    """Complexity measure cp used by the termination measures.

    Args:
        f: Well-formed formula

    Returns:
        cp(f): atoms count 1, each connective 1, a box-negation 2 and a
        conditional 3 on top of its arguments
    """
    if isinstance(f, Atom):
        return 1
    if isinstance(f, (Neg, LMod)):
        return 1 + complexity_cp(f.body)
    if isinstance(f, BoxNeg):
        return 2 + complexity_cp(f.body)
    if isinstance(f, Cond):
        return 3 + complexity_cp(f.ante) + complexity_cp(f.cons)
    return 1 + complexity_cp(f.left) + complexity_cp(f.right)


# -----------------------------------------------------
# Pretty printing
# -----------------------------------------------------

_PREC_COND = 0
_PREC_IMPLIES = 1
_PREC_OR = 2
_PREC_AND = 3
_PREC_UNARY = 4
_PREC_ATOM = 5


def _precedence(f: Formula) -> int:
    if isinstance(f, Atom):
        return _PREC_ATOM
    if isinstance(f, (Neg, BoxNeg, LMod)):
        return _PREC_UNARY
    if isinstance(f, And):
        return _PREC_AND
    if isinstance(f, Or):
        return _PREC_OR
    if isinstance(f, Implies):
        return _PREC_IMPLIES
    return _PREC_COND


def _wrap(f: Formula, needs_parens: bool) -> str:
    text = format_formula(f)
    return f"({text})" if needs_parens else text


@lru_cache(maxsize=None)
def format_formula(f: Formula) -> str:
    """Render ``f`` in the concrete syntax with minimal parentheses.

    Base-language output parses back to the same AST. Box-negation prints as
    ``[]~A`` and the state modality as ``L A``; neither is accepted by the
    parser.
    """
    own = _precedence(f)
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Neg):
        return "~" + _wrap(f.body, _precedence(f.body) < _PREC_UNARY)
    if isinstance(f, BoxNeg):
        return "[]~" + _wrap(f.body, _precedence(f.body) < _PREC_UNARY)
    if isinstance(f, LMod):
        return "L " + _wrap(f.body, _precedence(f.body) < _PREC_UNARY)
    if isinstance(f, Cond):
        left = _wrap(f.ante, _precedence(f.ante) <= own)
        right = _wrap(f.cons, _precedence(f.cons) <= own)
        return f"{left} |~ {right}"
    symbol = {And: "&", Or: "|", Implies: "->"}[type(f)]
    if isinstance(f, Implies):
        left = _wrap(f.left, _precedence(f.left) <= own)
        right = _wrap(f.right, _precedence(f.right) < own)
    else:
        left = _wrap(f.left, _precedence(f.left) < own)
        right = _wrap(f.right, _precedence(f.right) <= own)
    return f"{left} {symbol} {right}"


def formula_key(f: Formula) -> str:
    """Deterministic sort key."""
    return format_formula(f)


def sorted_formulas(formulas: Iterable[Formula]) -> list:
    return sorted(formulas, key=formula_key)
