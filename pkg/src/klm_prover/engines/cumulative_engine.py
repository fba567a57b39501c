"""Cumulative Engine - decision procedure for the cumulative logic C.

The calculus has no box rule and its positive conditional rule is neither
static nor dynamic: its middle conclusion jumps to a fresh state keeping
only conditionals and box consequences. Proof search is therefore run as a
least fixpoint over the finite space of nodes built from the closure of the
input: a node is refutable iff it is an axiom or some rule instance has all
of its conclusions refutable. Cycles stay open.
"""

import logging
import time
from collections import defaultdict, deque
from typing import Deque, Dict, Iterable, List, Optional, Set, Tuple

from ..shared.constants import (
    ENGINE_DEFAULT,
    LOGIC_C,
    OPEN,
    PENDING,
    PROJECT_BOXDOWN,
    PROJECT_CONDPM,
    PROJECT_LDOWN,
    REFUTABLE,
    RULE_AXIOM,
    RULE_COND_NEG,
    RULE_COND_POS,
    RULE_L_NEG,
    STATUS_SAT,
    STATUS_UNSAT,
)
from ..shared.errors import RuleApplicationError
from ..shared.utils import millis_since
from ..syntax.closure import closure_set
from ..syntax.formulas import BoxNeg, Cond, Formula, LMod, Neg, format_formula, sorted_formulas
from ..syntax.language import require_language
from .common import (
    RuleApplication,
    TableauNode,
    Trace,
    Verdict,
    boolean_conclusions,
    is_axiom,
    project,
)

logger = logging.getLogger(__name__)

# Nodes of the C calculus never use Sigma
CNode = TableauNode


class RefutabilityTable:
    """Status of every node met by the search.

    Entries start PENDING, may become REFUTABLE (never undone) and are set to
    OPEN when the fixpoint is reached.
    """

    def __init__(self) -> None:
        self._status: Dict[CNode, str] = {}
        self._rank: Dict[CNode, int] = {}
        self._via: Dict[CNode, Optional[RuleApplication]] = {}

    def __contains__(self, n: CNode) -> bool:
        return n in self._status

    def __len__(self) -> int:
        return len(self._status)

    def status(self, n: CNode) -> str:
        return self._status.get(n, PENDING)

    def discover(self, n: CNode) -> None:
        self._status.setdefault(n, PENDING)

    def is_refutable(self, n: CNode) -> bool:
        return self._status.get(n) == REFUTABLE

    def mark_refutable(self, n: CNode, via: Optional[RuleApplication]) -> None:
        """Record ``n`` as refutable by an axiom (``via`` None) or by a rule instance."""
        if self._status.get(n) == OPEN:
            raise RuleApplicationError("cannot refute a node after the fixpoint")
        self._status[n] = REFUTABLE
        self._via[n] = via
        self._rank[n] = 0 if via is None else 1 + max(self._rank[c] for c in via.conclusions)

    def rank(self, n: CNode) -> int:
        return self._rank[n]

    def justification(self, n: CNode) -> Optional[RuleApplication]:
        return self._via.get(n)

    def close(self) -> None:
        """Every node still pending at the fixpoint is open."""
        for n, status in self._status.items():
            if status == PENDING:
                self._status[n] = OPEN


def _instance(rule: str, principal: Optional[Formula], n: CNode, gammas) -> RuleApplication:
    return RuleApplication(
        rule=rule,
        principal=None if principal is None else format_formula(principal),
        premise=n,
        conclusions=tuple(CNode(frozenset(g)) for g in gammas),
    )


def applicable_rule_instances_c(n: CNode) -> List[RuleApplication]:
    """Every rule instance of the C calculus applicable to ``n``.

    Boolean rules are invertible, so when one applies only the first boolean
    instance is returned. Otherwise there is one positive conditional instance
    per conditional (three conclusions), one negated conditional instance per
    negated conditional and one L instance per negated L-formula (or a single
    one when only positive L-formulas occur). Instances with a conclusion equal
    to the premise are left out: they can never refute it.
    """
    ordered = sorted_formulas(n.gamma)
    for f in ordered:
        found = boolean_conclusions(f)
        if found is not None:
            rule, branches = found
            rest = n.gamma - {f}
            return [_instance(rule, f, n, [rest | set(b) for b in branches])]

    kept = project(n, PROJECT_CONDPM)
    instances = []
    for f in ordered:
        if isinstance(f, Cond):
            ante, cons = LMod(f.ante), LMod(f.cons)
            jump = kept | project(n, PROJECT_BOXDOWN) | {f, ante, BoxNeg(ante)}
            gammas = [n.gamma | {Neg(ante)}, jump, n.gamma | {ante, BoxNeg(ante), cons}]
            inst = _instance(RULE_COND_POS, f, n, gammas)
        elif isinstance(f, Neg) and isinstance(f.body, Cond):
            ante, cons = LMod(f.body.ante), LMod(f.body.cons)
            inst = _instance(RULE_COND_NEG, f, n, [kept | {ante, BoxNeg(ante), Neg(cons)}])
        else:
            continue
        if n not in inst.conclusions:
            instances.append(inst)

    down = project(n, PROJECT_LDOWN)
    negated = [f for f in ordered if isinstance(f, Neg) and isinstance(f.body, LMod)]
    for f in negated:
        instances.append(_instance(RULE_L_NEG, f, n, [down | {Neg(f.body.body)}]))
    if not negated and down:
        instances.append(_instance(RULE_L_NEG, None, n, [down]))
    return [inst for inst in instances if n not in inst.conclusions]


def _replay(table: RefutabilityTable, root: CNode, trace: Trace) -> None:
    """Record the closed tableau found for ``root``, premises before conclusions."""
    seen: Set[CNode] = set()
    stack = [root]
    while stack:
        n = stack.pop()
        if n in seen:
            continue
        seen.add(n)
        via = table.justification(n)
        if via is None:
            trace.record(RULE_AXIOM, None, n, [], closed=True)
            continue
        trace.record(via.rule, via.principal, n, list(via.conclusions), closed=True)
        stack.extend(reversed(via.conclusions))


def decide_c(gamma: Iterable[Formula], *, trace: Optional[Trace] = None) -> Verdict:
    """Decide cumulative satisfiability of ``gamma``.

    Args:
        gamma: Formulas of the base language
        trace: Optional collector; filled with the closed tableau on UNSAT

    Returns:
        Verdict without a model

    Raises:
        LanguageError: A formula is outside the base language
        RuleApplicationError: A node outside the closure of the input was built
    """
    start = time.perf_counter()
    formulas = list(gamma)
    require_language(formulas, LOGIC_C)
    root = CNode.of(formulas)
    closure = closure_set(formulas, LOGIC_C)

    table = RefutabilityTable()
    instances: Dict[CNode, List[RuleApplication]] = {}
    remaining: Dict[Tuple[CNode, int], int] = {}
    watchers: Dict[CNode, List[Tuple[CNode, int]]] = defaultdict(list)
    queue: Deque[CNode] = deque([root])
    table.discover(root)
    expanded = 0

    def refute(n: CNode, via: Optional[RuleApplication]) -> None:
        worklist = [(n, via)]
        while worklist:
            node, reason = worklist.pop()
            if table.is_refutable(node):
                continue
            table.mark_refutable(node, reason)
            for parent, k in watchers[node]:
                remaining[(parent, k)] -= 1
                if remaining[(parent, k)] == 0 and not table.is_refutable(parent):
                    worklist.append((parent, instances[parent][k]))

    while queue and not table.is_refutable(root):
        n = queue.popleft()
        if table.is_refutable(n):
            continue
        if not n.gamma <= closure:
            stray = sorted_formulas(n.gamma - closure)[0]
            raise RuleApplicationError(f"node leaves the closure: {format_formula(stray)}")
        expanded += 1
        if is_axiom(n):
            refute(n, None)
            continue
        insts = applicable_rule_instances_c(n)
        instances[n] = insts
        for k, inst in enumerate(insts):
            pending = [c for c in dict.fromkeys(inst.conclusions) if not table.is_refutable(c)]
            remaining[(n, k)] = len(pending)
            for c in pending:
                watchers[c].append((n, k))
                if c not in table:
                    table.discover(c)
                    queue.append(c)
            if not pending:
                refute(n, inst)
                break

    refuted = table.is_refutable(root)
    table.close()
    verdict = Verdict(
        status=STATUS_UNSAT if refuted else STATUS_SAT,
        logic=LOGIC_C,
        engine=ENGINE_DEFAULT,
        trace=trace,
    )
    if refuted and trace is not None:
        _replay(table, root, trace)
    verdict.stats["nodes"] = expanded
    verdict.stats["millis"] = millis_since(start)
    logger.info(
        f"[ENGINE_C] {verdict.status} after expanding {expanded} of {len(table)} nodes "
        f"in {verdict.stats['millis']} ms"
    )
    return verdict
