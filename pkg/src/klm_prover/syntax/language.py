"""Per-logic language checks.

The base language admits boolean combinations of propositional formulas and
conditionals between propositional formulas. The calculus layer adds the
internal modalities each tableau system manipulates: ``BoxNeg`` over
propositional formulas for P and R, ``LMod`` and ``BoxNeg(LMod A)`` for CL,
and the same for C without negated box formulas.
"""

from typing import List

from ..shared.constants import LANGUAGE_LAYERS, LAYER_BASE, LOGIC_C, WORLD_LOGICS
from ..shared.errors import LanguageError
from .formulas import (
    BoxNeg,
    Cond,
    Formula,
    Implies,
    LMod,
    Neg,
    children,
    format_formula,
    is_propositional,
)


def _check(f: Formula, logic: str, layer: str, negated: bool, out: List[str]) -> None:
    shown = format_formula(f)
    if isinstance(f, Cond):
        if not is_propositional(f.ante):
            out.append(f"non-propositional antecedent in {shown}")
        if not is_propositional(f.cons):
            out.append(f"non-propositional consequent in {shown}")
        return
    if isinstance(f, BoxNeg):
        if layer == LAYER_BASE:
            out.append(f"box formula {shown} not allowed in the base language")
            return
        if logic in WORLD_LOGICS:
            if not is_propositional(f.body):
                out.append(f"box over non-propositional formula in {shown}")
        else:
            if not (isinstance(f.body, LMod) and is_propositional(f.body.body)):
                out.append(f"box must wrap an L-formula in {shown}")
            if logic == LOGIC_C and negated:
                out.append(f"negated box formula ~{shown} not allowed in C")
        return
    if isinstance(f, LMod):
        if layer == LAYER_BASE:
            out.append(f"L-formula {shown} not allowed in the base language")
            return
        if logic in WORLD_LOGICS:
            out.append(f"L-formula {shown} not allowed in {logic.upper()}")
            return
        if not is_propositional(f.body):
            out.append(f"L over non-propositional formula in {shown}")
        return
    if isinstance(f, Neg):
        _check(f.body, logic, layer, not negated, out)
    elif isinstance(f, Implies):
        _check(f.left, logic, layer, not negated, out)
        _check(f.right, logic, layer, negated, out)
    else:
        for child in children(f):
            _check(child, logic, layer, negated, out)


def validate_language(f: Formula, logic: str, layer: str = LAYER_BASE) -> List[str]:
    """Check ``f`` against the language of ``logic`` at ``layer``.

    Args:
        f: Formula to check
        logic: One of c, cl, p, r
        layer: ``base`` (user input) or ``calculus`` (tableau nodes)

    Returns:
        List of violations; empty when the formula is well formed
    """
    if layer not in LANGUAGE_LAYERS:
        raise ValueError(f"unknown language layer {layer!r}")
    violations: List[str] = []
    _check(f, logic, layer, negated=False, out=violations)
    return violations


def require_language(formulas, logic: str, layer: str = LAYER_BASE) -> None:
    """Raise LanguageError when any formula violates the language."""
    violations: List[str] = []
    for f in formulas:
        violations.extend(validate_language(f, logic, layer))
    if violations:
        raise LanguageError(violations)
