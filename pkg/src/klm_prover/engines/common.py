"""Engine Common - shared machinery for the unlabelled tableau calculi.

Nodes are pairs Gamma;Sigma of formula sets. Static rules (boolean
connectives and, except for C, the positive conditional rule) replace their
principal formula by the formulas of one conclusion; EXPAND is realized by
enumerating every saturated branch lazily, leftmost conclusion first.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from ..shared.constants import (
    LOGIC_C,
    PROJECT_BOX,
    PROJECT_BOXDOWN,
    PROJECT_CONDNEG,
    PROJECT_CONDPM,
    PROJECT_CONDPOS,
    PROJECT_LDOWN,
    RULE_AND_NEG,
    RULE_AND_POS,
    RULE_COND_POS,
    RULE_IMP_NEG,
    RULE_IMP_POS,
    RULE_NEG_NEG,
    RULE_OR_NEG,
    RULE_OR_POS,
    STATUS_SAT,
)
from ..shared.errors import RuleApplicationError
from ..syntax.closure import wrap_for
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
    sorted_formulas,
)

logger = logging.getLogger(__name__)


# -----------------------------------------------------
# Nodes and trace records
# -----------------------------------------------------


@dataclass(frozen=True)
class TableauNode:
    """A tableau node Gamma;Sigma (Sigma holds the positive conditionals already used)."""

    gamma: FrozenSet[Formula]
    sigma: FrozenSet[Formula] = frozenset()

    @classmethod
    def of(cls, formulas: Iterable[Formula], sigma: Iterable[Formula] = ()) -> "TableauNode":
        return cls(frozenset(formulas), frozenset(sigma))

    def describe(self) -> str:
        gamma = ", ".join(format_formula(f) for f in sorted_formulas(self.gamma))
        if not self.sigma:
            return gamma
        sigma = ", ".join(format_formula(f) for f in sorted_formulas(self.sigma))
        return f"{gamma} ; {sigma}"


@dataclass(frozen=True)
class RuleApplication:
    """One rule application: premise, principal formula and conclusions."""

    rule: str
    principal: Optional[str]
    premise: Any
    conclusions: Tuple[Any, ...]
    closed: bool = False


@dataclass
class Trace:
    """Collects rule applications; node values are numbered on first sight."""

    steps: List[RuleApplication] = field(default_factory=list)
    _index: Dict[Any, int] = field(default_factory=dict, repr=False)
    _nodes: List[Any] = field(default_factory=list, repr=False)

    def record(
        self,
        rule: str,
        principal: Optional[Formula],
        premise: Any,
        conclusions: Sequence[Any],
        closed: bool = False,
    ) -> None:
        for node in (premise, *conclusions):
            if node not in self._index:
                self._index[node] = len(self._nodes)
                self._nodes.append(node)
        shown = principal
        if principal is not None and not isinstance(principal, str):
            shown = format_formula(principal)
        self.steps.append(
            RuleApplication(
                rule=rule,
                principal=shown,
                premise=premise,
                conclusions=tuple(conclusions),
                closed=closed,
            )
        )

    def __len__(self) -> int:
        return len(self.steps)

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready form: numbered nodes and steps referencing them."""
        return {
            "nodes": [n.describe() for n in self._nodes],
            "steps": [
                {
                    "rule": s.rule,
                    "principal": s.principal,
                    "premise": self._index[s.premise],
                    "conclusions": [self._index[c] for c in s.conclusions],
                    "closed": s.closed,
                }
                for s in self.steps
            ],
        }


@dataclass
class Verdict:
    """Answer of a decision procedure."""

    status: str
    logic: str
    engine: str
    model: Any = None
    designated: Optional[str] = None
    trace: Optional[Trace] = None
    stats: Dict[str, int] = field(default_factory=lambda: {"nodes": 0, "labels": 0, "millis": 0})

    @property
    def is_sat(self) -> bool:
        return self.status == STATUS_SAT


# -----------------------------------------------------
# Projections and axioms
# -----------------------------------------------------


def _is_negated(f: Formula, kind: type) -> bool:
    return isinstance(f, Neg) and isinstance(f.body, kind)


def project(n: TableauNode, selector: str) -> FrozenSet[Formula]:
    """Named subsets of Gamma used to build the conclusions of dynamic rules.

    Args:
        n: Tableau node
        selector: box, boxdown, condpos, condneg, condpm or Ldown

    Returns:
        box: boxed formulas; boxdown: the negations of their bodies;
        condpos/condneg/condpm: positive, negated, or both kinds of
        conditionals; Ldown: bodies of L-formulas
    """
    g = n.gamma
    if selector == PROJECT_BOX:
        return frozenset(f for f in g if isinstance(f, BoxNeg))
    if selector == PROJECT_BOXDOWN:
        return frozenset(Neg(f.body) for f in g if isinstance(f, BoxNeg))
    if selector == PROJECT_CONDPOS:
        return frozenset(f for f in g if isinstance(f, Cond))
    if selector == PROJECT_CONDNEG:
        return frozenset(f for f in g if _is_negated(f, Cond))
    if selector == PROJECT_CONDPM:
        return frozenset(f for f in g if isinstance(f, Cond) or _is_negated(f, Cond))
    if selector == PROJECT_LDOWN:
        return frozenset(f.body for f in g if isinstance(f, LMod))
    raise ValueError(f"unknown projection {selector!r}")


def is_axiom(n: TableauNode) -> bool:
    """True iff some atom occurs in Gamma together with its negation."""
    return any(
        isinstance(f, Neg) and isinstance(f.body, Atom) and f.body in n.gamma for f in n.gamma
    )


def has_clash(n: TableauNode) -> bool:
    """True iff some formula occurs in Gamma together with its negation."""
    return any(isinstance(f, Neg) and f.body in n.gamma for f in n.gamma)


def negated_boxes(n: TableauNode) -> List[Formula]:
    """Bodies A of the formulas ~[]~A in Gamma, in a fixed order."""
    return [f.body.body for f in sorted_formulas(n.gamma) if _is_negated(f, BoxNeg)]


def negated_conditionals(n: TableauNode) -> List[Formula]:
    return [f for f in sorted_formulas(n.gamma) if _is_negated(f, Cond)]


# -----------------------------------------------------
# Static rules
# -----------------------------------------------------


def boolean_conclusions(f: Formula) -> Optional[Tuple[str, List[List[Formula]]]]:
    """Rule name and conclusion sets of the boolean rule with principal ``f``.

    Returns None when ``f`` is not the principal formula of a boolean rule.
    """
    if isinstance(f, And):
        return RULE_AND_POS, [[f.left, f.right]]
    if isinstance(f, Or):
        return RULE_OR_POS, [[f.left], [f.right]]
    if isinstance(f, Implies):
        return RULE_IMP_POS, [[Neg(f.left)], [f.right]]
    if isinstance(f, Neg):
        g = f.body
        if isinstance(g, Neg):
            return RULE_NEG_NEG, [[g.body]]
        if isinstance(g, And):
            return RULE_AND_NEG, [[Neg(g.left)], [Neg(g.right)]]
        if isinstance(g, Or):
            return RULE_OR_NEG, [[Neg(g.left), Neg(g.right)]]
        if isinstance(g, Implies):
            return RULE_IMP_NEG, [[g.left, Neg(g.right)]]
    return None


def cond_pos_conclusions(f: Cond, logic: str) -> List[List[Formula]]:
    """The three branches of the static positive conditional rule."""
    ante, cons = wrap_for(logic, f.ante), wrap_for(logic, f.cons)
    return [[Neg(ante)], [Neg(BoxNeg(ante))], [cons]]


def static_instance(
    n: TableauNode, logic: str
) -> Optional[Tuple[str, Formula, List[TableauNode]]]:
    """First applicable static rule instance of ``n``, or None when saturated.

    Boolean rules come before the positive conditional rule; within each
    group formulas are taken in their canonical order. For C only boolean
    rules are static.
    """
    ordered = sorted_formulas(n.gamma)
    for f in ordered:
        found = boolean_conclusions(f)
        if found is not None:
            rule, branches = found
            rest = n.gamma - {f}
            return rule, f, [TableauNode(rest | frozenset(b), n.sigma) for b in branches]
    if logic == LOGIC_C:
        return None
    for f in ordered:
        if isinstance(f, Cond):
            rest = n.gamma - {f}
            if f in n.sigma:
                return RULE_COND_POS, f, [TableauNode(rest, n.sigma)]
            sigma = n.sigma | {f}
            return (
                RULE_COND_POS,
                f,
                [TableauNode(rest | frozenset(b), sigma) for b in cond_pos_conclusions(f, logic)],
            )
    return None


def informative(n: TableauNode, conclusions: List[TableauNode]) -> List[TableauNode]:
    """Drop the siblings of a conclusion that adds no formula to ``n``.

    Such a conclusion is equivalent to its premise (the principal either
    follows from what is kept or moves to Sigma).
    """
    for c in conclusions:
        if c.gamma <= n.gamma:
            return [c]
    return conclusions


def is_saturated(n: TableauNode, logic: str) -> bool:
    """No static rule of ``logic`` applies to ``n``."""
    return static_instance(n, logic) is None


def iter_expansions(
    n: TableauNode, logic: str, trace: Optional[Trace] = None
) -> Iterator[TableauNode]:
    """Lazily yield the open saturated expansions of ``n``, leftmost branch first.

    Args:
        n: Node to expand
        logic: One of c, cl, p, r
        trace: Optional collector for the static rule applications

    Returns:
        Generator of saturated nodes without a formula next to its negation
    """
    if has_clash(n):
        return
    found = static_instance(n, logic)
    if found is None:
        yield n
        return
    rule, principal, conclusions = found
    conclusions = informative(n, conclusions)
    if trace is not None:
        trace.record(rule, principal, n, conclusions)
    for c in conclusions:
        yield from iter_expansions(c, logic, trace)


def expand_static(n: TableauNode, logic: str) -> List[TableauNode]:
    """Every open saturated expansion of ``n`` (the full branch fan-out)."""
    seen: List[TableauNode] = []
    for s in iter_expansions(n, logic):
        if s not in seen:
            seen.append(s)
    logger.debug(f"[ENGINE] {len(seen)} open saturated expansion(s)")
    return seen


def require_principal(n: TableauNode, principal: Formula) -> None:
    if principal not in n.gamma:
        raise RuleApplicationError(f"principal {format_formula(principal)} is not in the node")
