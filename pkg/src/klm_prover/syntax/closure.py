"""Finite closure of the formulas a tableau can generate from an input set."""

from typing import FrozenSet, Iterable, List, Set

from ..shared.constants import LOGIC_C, STATE_LOGICS
from .formulas import And, BoxNeg, Cond, Formula, Implies, LMod, Neg, Or, subformulas


def wrap_for(logic: str, f: Formula) -> Formula:
    """The form an antecedent or consequent takes inside the calculus of ``logic``."""
    return LMod(f) if logic in STATE_LOGICS else f


def box_disjunction(body: Formula) -> Formula:
    """``~[]~A | A``, introduced by the strengthened box rule."""
    return Or(Neg(BoxNeg(body)), body)


def _derived(f: Formula, logic: str) -> List[Formula]:
    with_negated_box = logic != LOGIC_C
    if isinstance(f, (And, Or)):
        return [f.left, f.right]
    if isinstance(f, Implies):
        return [Neg(f.left), f.right]
    if isinstance(f, Cond):
        ante, cons = wrap_for(logic, f.ante), wrap_for(logic, f.cons)
        out = [Neg(ante), ante, BoxNeg(ante), cons, f.ante, f.cons]
        if with_negated_box:
            out += [Neg(BoxNeg(ante)), box_disjunction(ante)]
        return out
    if isinstance(f, BoxNeg):
        return [Neg(f.body), f.body]
    if isinstance(f, LMod):
        return [f.body]
    if isinstance(f, Neg):
        g = f.body
        if isinstance(g, Neg):
            return [g.body]
        if isinstance(g, (And, Or)):
            return [Neg(g.left), Neg(g.right)]
        if isinstance(g, Implies):
            return [g.left, Neg(g.right)]
        if isinstance(g, Cond):
            ante, cons = wrap_for(logic, g.ante), wrap_for(logic, g.cons)
            return [ante, BoxNeg(ante), Neg(cons), g]
        if isinstance(g, BoxNeg):
            return [g.body, g, box_disjunction(g.body)]
        if isinstance(g, LMod):
            return [Neg(g.body), g]
        return [g]
    return []


def closure_set(formulas: Iterable[Formula], logic: str) -> FrozenSet[Formula]:
    """Every formula that can appear in a tableau node rooted at ``formulas``.

    Contains all subformulas and their single negations, the box and
    L-wrapped forms the conditional rules introduce for each antecedent and
    consequent, and the disjunctions of the strengthened box rule. Formulas of
    the form ``~[]~A`` are left out for C.

    Args:
        formulas: Input formulas (base language)
        logic: One of c, cl, p, r

    Returns:
        Finite set, monotone in the input and idempotent
    """
    result: Set[Formula] = set()
    pending = [g for f in formulas for g in subformulas(f)]
    while pending:
        f = pending.pop()
        if f in result:
            continue
        result.add(f)
        pending.extend(g for g in _derived(f, logic) if g not in result)
        if isinstance(f, Neg):
            continue
        if logic == LOGIC_C and isinstance(f, BoxNeg):
            continue
        negated = Neg(f)
        if negated not in result:
            pending.append(negated)
    return frozenset(result)
