"""Preferential Engine - decision procedure for the preferential logic P.

Two engines share the node representation of ``common``:

* ``default``: every negated conditional is checked in its own subproblem
  (reformulated negated-conditional rule) and chains of worlds are built with
  the strengthened box rule; the saturated root without its negated
  conditionals gets a chain of its own.
* ``naive``: the plain terminating calculus, where a saturated set is open iff
  every dynamic successor (one per negated conditional and per negated box)
  is open.

SAT answers carry a countermodel: worlds are the saturated sets visited, the
preference is the transitive closure of the box steps.
"""

import logging
import time
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from ..models.structures import MultiLinearTag, PrefModel
from ..shared.constants import (
    ENGINE_DEFAULT,
    ENGINE_NAIVE,
    LOGIC_P,
    PROJECT_BOX,
    PROJECT_BOXDOWN,
    PROJECT_CONDPM,
    PROJECT_CONDPOS,
    RULE_BOX_NEG,
    RULE_BOX_NEG_STRONG,
    RULE_COND_NEG,
    STATUS_SAT,
    STATUS_UNSAT,
)
from ..shared.errors import ModelError, RuleApplicationError
from ..shared.utils import millis_since, transitive_closure
from ..syntax.closure import box_disjunction, wrap_for
from ..syntax.formulas import (
    Atom,
    BoxNeg,
    Cond,
    Formula,
    Implies,
    Neg,
    children,
    complexity_cp,
    format_formula,
)
from ..syntax.language import require_language
from .common import (
    TableauNode,
    Trace,
    Verdict,
    iter_expansions,
    negated_boxes,
    negated_conditionals,
    project,
    require_principal,
)

logger = logging.getLogger(__name__)


# -----------------------------------------------------
# Measure
# -----------------------------------------------------


@dataclass(frozen=True, order=True)
class PMeasure:
    """Termination measure, compared lexicographically.

    Every rule lowers one of c1-c4 except the rule on a negated disjunction,
    which can leave c4 unchanged (cp(~(A | B)) = cp(~A) + cp(~B)); it still
    lowers the tiebreak c5, the sum of squared complexities.
    """

    c1: int
    c2: int
    c3: int
    c4: int
    c5: int = 0


def polar_conditionals(formulas: Iterable[Formula]) -> Tuple[Set[Cond], Set[Cond]]:
    """Conditionals occurring positively and negatively in ``formulas``."""
    positive: Set[Cond] = set()
    negative: Set[Cond] = set()
    stack = [(f, True) for f in formulas]
    while stack:
        f, polarity = stack.pop()
        if isinstance(f, Cond):
            (positive if polarity else negative).add(f)
        elif isinstance(f, Neg):
            stack.append((f.body, not polarity))
        elif isinstance(f, Implies):
            stack.append((f.left, not polarity))
            stack.append((f.right, polarity))
        else:
            stack.extend((c, polarity) for c in children(f))
    return positive, negative


def measure_p(n: TableauNode, logic: str = LOGIC_P) -> PMeasure:
    """Measure of a node Gamma;Sigma.

    Args:
        n: Tableau node
        logic: P, or CL to read antecedents through the L modality

    Returns:
        c1 negated conditionals in Gamma, c2 positive conditionals of
        Gamma and Sigma whose antecedent is not boxed in Gamma, c3 positive
        conditionals in Gamma, c4 total complexity of Gamma, c5 sum of
        squared complexities of Gamma
    """
    positive, negative = polar_conditionals(n.gamma)
    boxed = {f.body for f in n.gamma if isinstance(f, BoxNeg)}
    used = positive | {f for f in n.sigma if isinstance(f, Cond)}
    return PMeasure(
        c1=len(negative),
        c2=sum(1 for c in used if wrap_for(logic, c.ante) not in boxed),
        c3=len(positive),
        c4=sum(complexity_cp(f) for f in n.gamma),
        c5=sum(complexity_cp(f) ** 2 for f in n.gamma),
    )


# -----------------------------------------------------
# Dynamic rules
# -----------------------------------------------------


def _neg_cond_parts(principal: Formula, logic: str) -> FrozenSet[Formula]:
    if not (isinstance(principal, Neg) and isinstance(principal.body, Cond)):
        raise RuleApplicationError("principal is not a negated conditional")
    ante = wrap_for(logic, principal.body.ante)
    cons = wrap_for(logic, principal.body.cons)
    return frozenset({ante, BoxNeg(ante), Neg(cons)})


def apply_neg_cond_p(n: TableauNode, principal: Formula, logic: str = LOGIC_P) -> TableauNode:
    """Reformulated negated-conditional rule.

    The conclusion keeps Sigma and the positive conditionals of Gamma and
    drops every other negated conditional.
    """
    require_principal(n, principal)
    parts = _neg_cond_parts(principal, logic)
    return TableauNode(n.sigma | project(n, PROJECT_CONDPOS) | parts)


def apply_neg_cond_plain(n: TableauNode, principal: Formula, logic: str = LOGIC_P) -> TableauNode:
    """Plain negated-conditional rule: the other negated conditionals are kept."""
    require_principal(n, principal)
    parts = _neg_cond_parts(principal, logic)
    return TableauNode(n.sigma | (project(n, PROJECT_CONDPM) - {principal}) | parts)


def _box_base(n: TableauNode) -> FrozenSet[Formula]:
    return (
        n.sigma
        | project(n, PROJECT_CONDPM)
        | project(n, PROJECT_BOX)
        | project(n, PROJECT_BOXDOWN)
    )


def apply_box_minus_plain(n: TableauNode, body: Formula) -> TableauNode:
    """Plain box rule on ``~[]~body``: one preferred world where ``body`` is minimal."""
    require_principal(n, Neg(BoxNeg(body)))
    return TableauNode(_box_base(n) | {body, BoxNeg(body)})


def apply_box_minus_strong(n: TableauNode) -> List[TableauNode]:
    """Strengthened box rule: one conclusion per negated box of ``n``.

    Conclusion i makes A_i minimal and keeps ``~[]~A_j | A_j`` for every
    other negated box, so no choice between them has to be undone.

    Raises:
        RuleApplicationError: The node has no negated box formula
    """
    bodies = negated_boxes(n)
    if not bodies:
        raise RuleApplicationError("no negated box formula in the node")
    base = _box_base(n)
    conclusions = []
    for i, body in enumerate(bodies):
        others = {box_disjunction(b) for j, b in enumerate(bodies) if j != i}
        conclusions.append(TableauNode(base | {body, BoxNeg(body)} | others))
    return conclusions


# -----------------------------------------------------
# Search
# -----------------------------------------------------


@dataclass(eq=False)
class World:
    """An open saturated set with its successors in the extracted model.

    ``below`` holds worlds reached by a box step (they are preferred),
    ``beside`` worlds reached by a negated-conditional step and ``accessible``
    the propositional worlds reached through the L modality.
    """

    node: TableauNode
    below: List["World"] = field(default_factory=list)
    beside: List["World"] = field(default_factory=list)
    accessible: List[TableauNode] = field(default_factory=list)


class PreferentialSearch:
    """Backtracking search shared by the P and CL procedures."""

    log_tag = "[ENGINE_P]"

    def __init__(self, logic: str = LOGIC_P, trace: Optional[Trace] = None):
        self.logic = logic
        self.trace = trace
        self.nodes = 0
        self._memo: Dict[TableauNode, Optional[World]] = {}
        self._worlds: Dict[TableauNode, Optional[World]] = {}

    def _record(self, rule: str, principal, premise, conclusions) -> None:
        if self.trace is not None:
            self.trace.record(rule, principal, premise, conclusions)

    def accessible_worlds(self, s: TableauNode) -> Optional[List[TableauNode]]:
        """Worlds required by the L modality; None when one of them is closed."""
        return []

    def general_check(self, root: TableauNode) -> Optional[List[World]]:
        """Split over negated conditionals; returns the chain tops, designated first.

        Negated-conditional subproblems are checked before the designated chain.
        """
        for s in iter_expansions(root, self.logic, self.trace):
            negs = negated_conditionals(s)
            subs = []
            for principal in negs:
                conclusion = apply_neg_cond_p(s, principal, self.logic)
                self._record(RULE_COND_NEG, principal, s, [conclusion])
                sub = self.check(conclusion)
                if sub is None:
                    shown = format_formula(principal)
                    logger.debug(f"{self.log_tag} subproblem for {shown} is closed")
                    break
                subs.append(sub)
            else:
                top = self.check(TableauNode(s.gamma - set(negs), s.sigma))
                if top is not None:
                    return [top] + subs
        return None

    def check(self, node: TableauNode) -> Optional[World]:
        """Build a chain of worlds for ``node`` using the strengthened box rule."""
        if node in self._memo:
            return self._memo[node]
        result = None
        for s in iter_expansions(node, self.logic, self.trace):
            result = self._chain_from(s)
            if result is not None:
                break
        self._memo[node] = result
        return result

    def _chain_from(self, s: TableauNode) -> Optional[World]:
        if s in self._worlds:
            return self._worlds[s]
        self.nodes += 1
        result = None
        accessible = self.accessible_worlds(s)
        if accessible is not None:
            if not negated_boxes(s):
                result = World(s, accessible=accessible)
            else:
                conclusions = apply_box_minus_strong(s)
                self._record(RULE_BOX_NEG_STRONG, None, s, conclusions)
                for c in conclusions:
                    below = self.check(c)
                    if below is not None:
                        result = World(s, below=[below], accessible=accessible)
                        break
        self._worlds[s] = result
        return result

    def naive_check(self, node: TableauNode) -> Optional[World]:
        """Plain calculus: open iff some expansion has every dynamic successor open."""
        if node in self._memo:
            return self._memo[node]
        result = None
        for s in iter_expansions(node, self.logic, self.trace):
            self.nodes += 1
            world = World(s)
            for principal in negated_conditionals(s):
                conclusion = apply_neg_cond_plain(s, principal, self.logic)
                self._record(RULE_COND_NEG, principal, s, [conclusion])
                sub = self.naive_check(conclusion)
                if sub is None:
                    break
                world.beside.append(sub)
            else:
                for body in negated_boxes(s):
                    conclusion = apply_box_minus_plain(s, body)
                    self._record(RULE_BOX_NEG, Neg(BoxNeg(body)), s, [conclusion])
                    sub = self.naive_check(conclusion)
                    if sub is None:
                        break
                    world.below.append(sub)
                else:
                    result = world
                    break
        self._memo[node] = result
        return result


# -----------------------------------------------------
# Countermodel extraction
# -----------------------------------------------------


def valuation_of(node: TableauNode) -> FrozenSet[str]:
    return frozenset(f.name for f in node.gamma if isinstance(f, Atom))


class _Namer:
    """Assigns world names; shared worlds keep one name when ``share`` is set."""

    def __init__(self, share: bool):
        self.share = share
        self.names: Dict[int, str] = {}
        self.worlds: List[Tuple[str, World]] = []
        self.less: Set[Tuple[str, str]] = set()

    def visit(self, w: World) -> str:
        if self.share and id(w) in self.names:
            return self.names[id(w)]
        name = f"w{len(self.worlds)}"
        self.names[id(w)] = name
        self.worlds.append((name, w))
        for child in w.below:
            self.less.add((self.visit(child), name))
        for child in w.beside:
            self.visit(child)
        return name


def acyclic_closure(edges: Iterable[Tuple[str, str]]) -> FrozenSet[Tuple[str, str]]:
    """Transitive closure of box steps; a cycle means the extraction is broken."""
    less = transitive_closure(edges)
    loops = sorted(x for x, y in less if x == y)
    if loops:
        raise ModelError(f"extracted preference relation is cyclic at {loops[0]}")
    return less


def extract_pref_model(tops: List[World], *, share: bool = False) -> Tuple[PrefModel, str]:
    """Preferential model of the worlds reachable from ``tops``; designated is the first top."""
    namer = _Namer(share)
    chains = []
    names = []
    for top in tops:
        start = len(namer.worlds)
        names.append(namer.visit(top))
        chains.append(tuple(name for name, _ in reversed(namer.worlds[start:])))
    model = PrefModel(
        worlds=tuple(name for name, _ in namer.worlds),
        less=acyclic_closure(namer.less),
        val={name: valuation_of(w.node) for name, w in namer.worlds},
        logic=LOGIC_P,
        tag=None if share else MultiLinearTag(partition=tuple(chains)),
    )
    return model, names[0]


# -----------------------------------------------------
# Decision procedure
# -----------------------------------------------------


def decide_p(
    gamma: Iterable[Formula], *, engine: str = ENGINE_DEFAULT, trace: Optional[Trace] = None
) -> Verdict:
    """Decide preferential satisfiability of ``gamma``.

    Args:
        gamma: Formulas of the base language
        engine: ``default`` (split and strengthened box rule) or ``naive``
        trace: Optional collector for rule applications

    Returns:
        Verdict; SAT answers carry a multi-linear (default) or tree-shaped
        (naive) preferential countermodel

    Raises:
        LanguageError: A formula is outside the base language
    """
    start = time.perf_counter()
    formulas = list(gamma)
    require_language(formulas, LOGIC_P)
    root = TableauNode.of(formulas)
    search = PreferentialSearch(LOGIC_P, trace)
    if engine == ENGINE_NAIVE:
        top = search.naive_check(root)
        tops = [top] if top is not None else None
    elif engine == ENGINE_DEFAULT:
        tops = search.general_check(root)
    else:
        raise ValueError(f"unknown engine {engine!r}")

    verdict = Verdict(status=STATUS_UNSAT, logic=LOGIC_P, engine=engine, trace=trace)
    if tops is not None:
        model, designated = extract_pref_model(tops, share=engine == ENGINE_NAIVE)
        verdict.status = STATUS_SAT
        verdict.model = model
        verdict.designated = designated
        verdict.stats["labels"] = len(model.worlds)
    verdict.stats["nodes"] = search.nodes
    verdict.stats["millis"] = millis_since(start)
    logger.info(
        f"[ENGINE_P] {verdict.status} ({engine}) after {search.nodes} saturated nodes "
        f"in {verdict.stats['millis']} ms"
    )
    return verdict
