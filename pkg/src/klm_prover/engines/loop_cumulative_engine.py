"""Loop-Cumulative Engine - decision procedure for the logic CL.

The search is the preferential one over the L-wrapped calculus, plus the
L rule: every saturated world needs one propositional successor per
negated L-formula (all of them open), or a single successor when it only
has positive L-formulas.
"""

import logging
import time
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from ..models.structures import StateModel
from ..shared.constants import (
    ENGINE_DEFAULT,
    LOGIC_CL,
    PROJECT_LDOWN,
    RULE_L_NEG,
    STATUS_SAT,
    STATUS_UNSAT,
)
from ..shared.errors import RuleApplicationError
from ..shared.utils import millis_since
from ..syntax.formulas import Formula, LMod, Neg, sorted_formulas
from ..syntax.language import require_language
from .common import TableauNode, Trace, Verdict, iter_expansions, project
from .preferential_engine import (
    PMeasure,
    PreferentialSearch,
    World,
    acyclic_closure,
    measure_p,
    valuation_of,
)

logger = logging.getLogger(__name__)


def measure_cl(n: TableauNode) -> PMeasure:
    """The P measure read over L-wrapped antecedents."""
    return measure_p(n, LOGIC_CL)


def has_l_formulas(n: TableauNode) -> bool:
    return any(
        isinstance(f, LMod) or (isinstance(f, Neg) and isinstance(f.body, LMod)) for f in n.gamma
    )


def apply_L_minus(n: TableauNode) -> List[TableauNode]:
    """L rule: propositional successor worlds of ``n``.

    Returns one conclusion per ``~L A`` in Gamma, each holding the bodies of
    the positive L-formulas and ``~A``. Without negated L-formulas a single
    conclusion holds the bodies of the positive ones.

    Raises:
        RuleApplicationError: Gamma has no L-formula at all
    """
    down = project(n, PROJECT_LDOWN)
    negated = [
        f.body.body
        for f in sorted_formulas(n.gamma)
        if isinstance(f, Neg) and isinstance(f.body, LMod)
    ]
    if not down and not negated:
        raise RuleApplicationError("no L-formula in the node")
    if negated:
        return [TableauNode(down | {Neg(a)}) for a in negated]
    return [TableauNode(down)]


class LoopCumulativeSearch(PreferentialSearch):
    log_tag = "[ENGINE_CL]"

    def __init__(self, trace: Optional[Trace] = None):
        super().__init__(LOGIC_CL, trace)
        self._propositional: Dict[TableauNode, Optional[TableauNode]] = {}

    def _open_world(self, c: TableauNode) -> Optional[TableauNode]:
        """First open expansion of an L-rule conclusion, cached per conclusion."""
        if c not in self._propositional:
            self._propositional[c] = next(iter_expansions(c, self.logic, self.trace), None)
        return self._propositional[c]

    def accessible_worlds(self, s: TableauNode) -> Optional[List[TableauNode]]:
        if not has_l_formulas(s):
            return []
        conclusions = apply_L_minus(s)
        self._record(RULE_L_NEG, None, s, conclusions)
        worlds = []
        for c in conclusions:
            opened = self._open_world(c)
            if opened is None:
                return None
            worlds.append(opened)
        return worlds


# -----------------------------------------------------
# Countermodel extraction
# -----------------------------------------------------


def extract_state_model(tops: List[World]) -> Tuple[StateModel, str]:
    """Loop-cumulative model of the worlds reachable from ``tops``.

    Good worlds come from the search, bad worlds from the L rule (copies with
    the same parent and formulas are merged). Accessibility adds reflexive
    loops on worlds without successors and links the successors of a common
    parent with each other. A world preferred to a parent is also preferred
    to everything the parent accesses. Each world w then becomes the state
    labelled by the worlds it accesses.

    Returns:
        State model and the designated world (the root valuation)
    """
    names: List[str] = []
    val: Dict[str, FrozenSet[str]] = {}
    access: Dict[str, Set[str]] = {}
    below: Set[Tuple[str, str]] = set()

    def new_world(node: TableauNode) -> str:
        name = f"w{len(names)}"
        names.append(name)
        val[name] = valuation_of(node)
        access[name] = set()
        return name

    def visit(w: World) -> str:
        name = new_world(w.node)
        bad: Dict[FrozenSet[Formula], str] = {}
        for node in w.accessible:
            if node.gamma not in bad:
                bad[node.gamma] = new_world(node)
            access[name].add(bad[node.gamma])
        siblings = set(bad.values())
        for sibling in siblings:
            access[sibling] |= siblings
        for child in w.below:
            below.add((visit(child), name))
        return name

    top_names = [visit(top) for top in tops]
    for name in names:
        if not access[name]:
            access[name].add(name)
    edges = set(below)
    edges |= {(low, other) for low, high in below for other in access[high]}
    less = acyclic_closure(edges)

    state = {name: f"s_{name}" for name in names}
    model = StateModel(
        states=tuple(state[n] for n in names),
        worlds=tuple(names),
        label={state[n]: frozenset(access[n]) for n in names},
        less=frozenset((state[a], state[b]) for a, b in less),
        val=val,
        logic=LOGIC_CL,
    )
    return model, top_names[0]


def decide_cl(gamma: Iterable[Formula], *, trace: Optional[Trace] = None) -> Verdict:
    """Decide loop-cumulative satisfiability of ``gamma``.

    Args:
        gamma: Formulas of the base language
        trace: Optional collector for rule applications

    Returns:
        Verdict; SAT answers carry a state model and the root world
    """
    start = time.perf_counter()
    formulas = list(gamma)
    require_language(formulas, LOGIC_CL)
    search = LoopCumulativeSearch(trace)
    tops = search.general_check(TableauNode.of(formulas))

    verdict = Verdict(status=STATUS_UNSAT, logic=LOGIC_CL, engine=ENGINE_DEFAULT, trace=trace)
    if tops is not None:
        model, designated = extract_state_model(tops)
        verdict.status = STATUS_SAT
        verdict.model = model
        verdict.designated = designated
        verdict.stats["labels"] = len(model.states)
    verdict.stats["nodes"] = search.nodes
    verdict.stats["millis"] = millis_since(start)
    logger.info(
        f"[ENGINE_CL] {verdict.status} after {search.nodes} saturated nodes "
        f"in {verdict.stats['millis']} ms"
    )
    return verdict
