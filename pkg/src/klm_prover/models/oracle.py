"""Brute-force satisfiability oracle over bounded model enumerations."""

import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional

from ..shared.constants import (
    DEFAULT_ORACLE_BOUND,
    LOGIC_R,
    STATE_LOGICS,
    STATUS_NO_MODEL,
    STATUS_SAT,
)
from ..syntax.formulas import Cond, Formula, atoms_of, children, is_propositional, size
from .enumeration import enumerate_models
from .evaluation import eval_formula_at, validate_model
from .structures import Model

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OracleResult:
    """Outcome of a bounded model search.

    ``definitive`` is set when a negative answer proves unsatisfiability
    (logic R searched up to the small-model bound).
    """

    status: str
    logic: str
    bound: int
    model: Optional[Model] = None
    designated: Optional[str] = None
    definitive: bool = False
    inspected: int = 0

    @property
    def is_sat(self) -> bool:
        return self.status == STATUS_SAT


def relevant_formulas(gamma: Iterable[Formula]) -> List[Formula]:
    """Maximal propositional subformulas of ``gamma``, in first-seen order."""
    seen: List[Formula] = []
    stack = list(reversed(list(gamma)))
    while stack:
        f = stack.pop()
        if is_propositional(f):
            if f not in seen:
                seen.append(f)
            continue
        stack.extend(reversed(children(f)))
    return seen


def conditionals_of(gamma: Iterable[Formula]) -> List[Cond]:
    """Distinct conditionals occurring in ``gamma``."""
    found: List[Cond] = []
    stack = list(gamma)
    while stack:
        f = stack.pop()
        if isinstance(f, Cond):
            if f not in found:
                found.append(f)
            continue
        stack.extend(children(f))
    return found


def antecedents_of(gamma: Iterable[Formula]) -> List[Formula]:
    """Antecedents of every conditional occurring in ``gamma``."""
    found: List[Formula] = []
    for c in conditionals_of(gamma):
        if c.ante not in found:
            found.append(c.ante)
    return found


def oracle_sat(gamma: Iterable[Formula], logic: str, bound: Optional[int] = None) -> OracleResult:
    """Search for a model of ``gamma`` with at most ``bound`` worlds or states.

    Args:
        gamma: Base-language formulas
        logic: One of c, cl, p, r
        bound: Maximum number of worlds (P, R) or states (CL, C); defaults to
            ``size(gamma)`` for R

    Returns:
        SAT with the first model and designated point found, or
        NO_MODEL_WITHIN_BOUND (definitive only for R with bound >= size)
    """
    formulas = list(gamma)
    if bound is None:
        bound = max(1, size(formulas)) if logic == LOGIC_R else DEFAULT_ORACLE_BOUND
    relevant = relevant_formulas(formulas)
    antecedents = antecedents_of(formulas)
    worlds = bound
    if logic == LOGIC_R:
        # the designated world plus one minimal antecedent world per conditional
        # (falsifying the consequent when the conditional is false) keep every
        # conditional's truth value in a ranked model
        worlds = min(bound, len(conditionals_of(formulas)) + 1)
    models = enumerate_models(
        atoms_of(formulas),
        worlds,
        logic,
        relevant=relevant,
        antecedents=antecedents if logic in STATE_LOGICS else None,
    )
    inspected = 0
    for model in models:
        inspected += 1
        if validate_model(model, logic, antecedents):
            continue
        candidates = sorted(model.val) if logic in STATE_LOGICS else model.worlds
        for point in candidates:
            if all(eval_formula_at(model, point, f) for f in formulas):
                logger.info(f"[ORACLE] {logic} model found after {inspected} candidates")
                return OracleResult(
                    status=STATUS_SAT,
                    logic=logic,
                    bound=bound,
                    model=model,
                    designated=point,
                    inspected=inspected,
                )
    definitive = logic == LOGIC_R and bound >= size(formulas)
    logger.info(
        f"[ORACLE] no {logic} model within bound {bound} ({inspected} candidates)"
        + (", unsatisfiable" if definitive else "")
    )
    return OracleResult(
        status=STATUS_NO_MODEL,
        logic=logic,
        bound=bound,
        definitive=definitive,
        inspected=inspected,
    )
