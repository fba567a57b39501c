"""Formula syntax: AST, parser, language checks and closure sets."""

from .closure import closure_set
from .formulas import (
    And,
    Atom,
    BoxNeg,
    Cond,
    Formula,
    Implies,
    LMod,
    Neg,
    Or,
    atoms_of,
    complexity_cp,
    format_formula,
    is_propositional,
    size,
    subformulas,
)
from .language import require_language, validate_language
from .parser import KnowledgeBase, parse_formula, parse_kb

__all__ = [
    "And",
    "Atom",
    "BoxNeg",
    "Cond",
    "Formula",
    "Implies",
    "KnowledgeBase",
    "LMod",
    "Neg",
    "Or",
    "atoms_of",
    "closure_set",
    "complexity_cp",
    "format_formula",
    "is_propositional",
    "parse_formula",
    "parse_kb",
    "require_language",
    "size",
    "subformulas",
    "validate_language",
]
