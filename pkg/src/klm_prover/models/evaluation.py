"""Satisfaction, minimal points and structural validation for finite models."""

from typing import FrozenSet, Iterable, List

from ..shared.constants import LOGIC_CL, LOGIC_P, LOGIC_R
from ..shared.errors import ModelError
from ..syntax.formulas import (
    And,
    Atom,
    BoxNeg,
    Cond,
    Formula,
    Implies,
    LMod,
    Neg,
    Or,
    format_formula,
    is_propositional,
)
from .structures import Model, PrefModel, StateModel


def eval_propositional(valuation: FrozenSet[str], f: Formula) -> bool:
    """Classical truth of a propositional formula; unknown atoms are false."""
    if isinstance(f, Atom):
        return f.name in valuation
    if isinstance(f, Neg):
        return not eval_propositional(valuation, f.body)
    if isinstance(f, And):
        return eval_propositional(valuation, f.left) and eval_propositional(valuation, f.right)
    if isinstance(f, Or):
        return eval_propositional(valuation, f.left) or eval_propositional(valuation, f.right)
    if isinstance(f, Implies):
        return (not eval_propositional(valuation, f.left)) or eval_propositional(
            valuation, f.right
        )
    raise ModelError(f"not a propositional formula: {format_formula(f)}")


def _state_satisfies(m: StateModel, s: str, f: Formula) -> bool:
    """The relation s |= A for propositional A: every world of the label satisfies A."""
    key = ("state", s, f)
    if key not in m.memo:
        m.memo[key] = all(eval_propositional(m.val[w], f) for w in m.label[s])
    return m.memo[key]


def _point_satisfies(m: Model, p: str, f: Formula) -> bool:
    """Truth of a propositional (or L-wrapped, for state models) formula at a point."""
    if isinstance(m, StateModel):
        body = f.body if isinstance(f, LMod) else f
        return _state_satisfies(m, p, body)
    key = ("world", p, f)
    if key not in m.memo:
        m.memo[key] = eval_propositional(m.val[p], f)
    return m.memo[key]


def min_worlds(m: Model, f: Formula) -> FrozenSet[str]:
    """Minimal points satisfying ``f``: worlds for P/R, states for CL/C.

    Args:
        m: Model
        f: Propositional formula, or an L-wrapped one for state models

    Returns:
        {p : p satisfies f and no q < p satisfies f}
    """
    key = ("min", f)
    if key in m.memo:
        return m.memo[key]
    satisfying = {p for p in m.points if _point_satisfies(m, p, f)}
    result = frozenset(p for p in satisfying if not (m.below[p] & satisfying))
    m.memo[key] = result
    return result


def cond_holds(m: Model, f: Cond) -> bool:
    """Global truth of a conditional: every minimal antecedent point satisfies the consequent."""
    key = ("cond", f)
    if key not in m.memo:
        m.memo[key] = all(_point_satisfies(m, p, f.cons) for p in min_worlds(m, f.ante))
    return m.memo[key]


def _eval_world(m: Model, w: str, f: Formula) -> bool:
    if isinstance(f, Atom):
        return f.name in m.val[w]
    if isinstance(f, Cond):
        return cond_holds(m, f)
    if isinstance(f, Neg):
        return not _eval_world(m, w, f.body)
    if isinstance(f, And):
        return _eval_world(m, w, f.left) and _eval_world(m, w, f.right)
    if isinstance(f, Or):
        return _eval_world(m, w, f.left) or _eval_world(m, w, f.right)
    if isinstance(f, Implies):
        return (not _eval_world(m, w, f.left)) or _eval_world(m, w, f.right)
    if isinstance(f, BoxNeg) and isinstance(m, PrefModel):
        return not any(_eval_world(m, v, f.body) for v in m.below[w])
    raise ModelError(f"cannot evaluate {format_formula(f)} at world {w}")


def _eval_state(m: StateModel, s: str, f: Formula) -> bool:
    if is_propositional(f):
        return _state_satisfies(m, s, f)
    if isinstance(f, LMod):
        return _state_satisfies(m, s, f.body)
    if isinstance(f, BoxNeg):
        return not any(_eval_state(m, t, f.body) for t in m.below[s])
    if isinstance(f, Cond):
        return cond_holds(m, f)
    if isinstance(f, Neg):
        return not _eval_state(m, s, f.body)
    if isinstance(f, And):
        return _eval_state(m, s, f.left) and _eval_state(m, s, f.right)
    if isinstance(f, Or):
        return _eval_state(m, s, f.left) or _eval_state(m, s, f.right)
    if isinstance(f, Implies):
        return (not _eval_state(m, s, f.left)) or _eval_state(m, s, f.right)
    raise ModelError(f"cannot evaluate {format_formula(f)} at state {s}")


def eval_formula_at(m: Model, point: str, f: Formula) -> bool:
    """Truth of ``f`` at ``point``.

    For preferential models the point is a world. For state models the point
    is either a state (propositional formulas hold when all worlds of the
    label satisfy them) or a world (propositional formulas are classical,
    conditionals are global).

    Args:
        m: Model
        point: World or state identifier
        f: Formula

    Returns:
        Truth value

    Raises:
        ModelError: Unknown point, or a modality the point cannot interpret
    """
    if isinstance(m, StateModel) and point in m.label:
        return _eval_state(m, point, f)
    if point in m.val:
        return _eval_world(m, point, f)
    raise ModelError(f"unknown point {point!r}")


def satisfies_all(m: Model, point: str, formulas: Iterable[Formula]) -> bool:
    return all(eval_formula_at(m, point, f) for f in formulas)


# -----------------------------------------------------
# Structural validation
# -----------------------------------------------------


def validate_model(m: Model, logic: str, antecedents: Iterable[Formula] = ()) -> List[str]:
    """Check the frame conditions of ``logic`` and report each violation.

    Args:
        m: Model
        logic: One of c, cl, p, r
        antecedents: Formulas whose smoothness must hold

    Returns:
        Violations with witnesses; empty when the model is well formed
    """
    violations: List[str] = []
    points = m.points
    if not points:
        violations.append("model has no points")
    if isinstance(m, StateModel):
        for s in m.states:
            if not m.label.get(s):
                violations.append(f"empty label for state {s}")
            elif not m.label[s] <= set(m.val):
                violations.append(f"label of state {s} mentions unknown worlds")
    for x, y in sorted(m.less):
        if x == y:
            violations.append(f"not irreflexive: {x} < {x}")
    if logic in (LOGIC_P, LOGIC_R, LOGIC_CL):
        for x, y in sorted(m.less):
            for y2, z in sorted(m.less):
                if y == y2 and (x, z) not in m.less:
                    violations.append(f"not transitive: {x} < {y} and {y} < {z} but not {x} < {z}")
    if logic == LOGIC_R:
        for x, y in sorted(m.less):
            for w in points:
                if (x, w) not in m.less and (w, y) not in m.less:
                    violations.append(f"not modular: {x} < {y} but {w} is comparable to neither")
    for a in antecedents:
        minimal = min_worlds(m, a)
        for p in points:
            if _point_satisfies(m, p, a) and p not in minimal and not (m.below[p] & minimal):
                violations.append(
                    f"smoothness fails for {format_formula(a)} at {p}"
                )
    return violations


__all__ = [
    "cond_holds",
    "eval_formula_at",
    "eval_propositional",
    "min_worlds",
    "satisfies_all",
    "validate_model",
]
