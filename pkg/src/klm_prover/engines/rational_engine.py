"""Rational Engine - labelled decision procedure for the rational logic R.

Nodes hold labelled formulas ``x: F`` and relation formulas ``x < y``.
Formulas are never removed: boolean principals and expanded negated
conditionals are marked instead, and every positive conditional keeps the
labels it has already been applied to. The check procedure expands, creates
one world per negated conditional and then handles each negated box once,
reusing an existing minimal world when there is one.
"""

import logging
import random
import time
from collections import Counter
from dataclasses import dataclass, replace
from functools import total_ordering
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple

from ..models.evaluation import validate_model
from ..models.structures import PrefModel
from ..shared.constants import (
    ENGINE_DEFAULT,
    ENGINE_NAIVE,
    LOGIC_R,
    RULE_BOX_NEG,
    RULE_COND_NEG,
    RULE_COND_POS,
    RULE_MODULARITY,
    RULE_REUSE,
    STATUS_SAT,
    STATUS_UNSAT,
)
from ..shared.errors import ModelError, RuleApplicationError
from ..shared.utils import millis_since
from ..syntax.formulas import (
    Atom,
    BoxNeg,
    Cond,
    Formula,
    Neg,
    complexity_cp,
    format_formula,
    formula_key,
)
from ..syntax.language import require_language
from .common import Trace, Verdict, boolean_conclusions
from .preferential_engine import polar_conditionals

logger = logging.getLogger(__name__)

Labelled = Tuple[str, Formula]
Relation = Tuple[str, str]

ROOT_LABEL = "x0"


def _label_index(label: str) -> int:
    return int(label[1:])


def _labelled_key(item: Labelled) -> Tuple[int, str]:
    return _label_index(item[0]), formula_key(item[1])


def show(item: Labelled) -> str:
    return f"{item[0]}: {format_formula(item[1])}"


@dataclass(frozen=True)
class LabelledNode:
    """A node of the labelled calculus.

    Attributes:
        formulas: World formulas ``(x, F)``
        rels: Relation formulas ``(x, y)`` meaning x < y
        used: Pairs (conditional, label) the positive conditional rule has used
        expanded: World formulas whose rule has been applied
        considered: Negated boxes already handled by the check loop
        labels: Labels in creation order
    """

    formulas: FrozenSet[Labelled]
    rels: FrozenSet[Relation] = frozenset()
    used: FrozenSet[Tuple[Formula, str]] = frozenset()
    expanded: FrozenSet[Labelled] = frozenset()
    considered: FrozenSet[Labelled] = frozenset()
    labels: Tuple[str, ...] = (ROOT_LABEL,)

    @classmethod
    def root(cls, formulas: Iterable[Formula]) -> "LabelledNode":
        return cls(frozenset((ROOT_LABEL, f) for f in formulas))

    def extend(
        self,
        formulas: Iterable[Labelled] = (),
        rels: Iterable[Relation] = (),
        used: Iterable[Tuple[Formula, str]] = (),
        expanded: Iterable[Labelled] = (),
        considered: Iterable[Labelled] = (),
        label: Optional[str] = None,
    ) -> "LabelledNode":
        return replace(
            self,
            formulas=self.formulas | frozenset(formulas),
            rels=self.rels | frozenset(rels),
            used=self.used | frozenset(used),
            expanded=self.expanded | frozenset(expanded),
            considered=self.considered | frozenset(considered),
            labels=self.labels + ((label,) if label is not None else ()),
        )

    def fresh_label(self) -> str:
        return f"x{len(self.labels)}"

    def live(self) -> List[Labelled]:
        """World formulas not yet expanded, in a fixed order."""
        return sorted(self.formulas - self.expanded, key=_labelled_key)

    def describe(self) -> str:
        parts = [show(item) for item in sorted(self.formulas, key=_labelled_key)]
        parts += [f"{x} < {y}" for x, y in sorted(self.rels)]
        return ", ".join(parts)


def boxes_to(n: LabelledNode, upper: str, lower: str) -> FrozenSet[Labelled]:
    """Formulas ``lower: ~B`` and ``lower: []~B`` for every ``upper: []~B``."""
    out = set()
    for x, f in n.formulas:
        if x == upper and isinstance(f, BoxNeg):
            out.add((lower, Neg(f.body)))
            out.add((lower, f))
    return frozenset(out)


def is_axiom_r(n: LabelledNode) -> bool:
    """Atomic clash at some label, or a relation cycle of length one or two."""
    for x, f in n.formulas:
        if isinstance(f, Neg) and isinstance(f.body, Atom) and (x, f.body) in n.formulas:
            return True
    return any(x == y or (y, x) in n.rels for x, y in n.rels)


def has_labelled_clash(n: LabelledNode) -> bool:
    """Some label holds a formula together with its negation."""
    return any(isinstance(f, Neg) and (x, f.body) in n.formulas for x, f in n.formulas)


def informative_r(n: LabelledNode, conclusions: List[LabelledNode]) -> List[LabelledNode]:
    """Drop the siblings of a conclusion adding no world or relation formula to ``n``."""
    for c in conclusions:
        if c.formulas <= n.formulas and c.rels <= n.rels:
            return [c]
    return conclusions


# -----------------------------------------------------
# Rules
# -----------------------------------------------------


def apply_neg_cond_r(n: LabelledNode, principal: Labelled) -> LabelledNode:
    """Negated conditional rule on ¬(A |~ B): a fresh label where A is minimal and B fails."""
    if principal not in n.formulas:
        raise RuleApplicationError(f"principal {show(principal)} is not in the node")
    f = principal[1]
    if not (isinstance(f, Neg) and isinstance(f.body, Cond)):
        raise RuleApplicationError(f"{show(principal)} is not a negated conditional")
    x = n.fresh_label()
    ante, cons = f.body.ante, f.body.cons
    return n.extend(
        formulas=[(x, ante), (x, BoxNeg(ante)), (x, Neg(cons))],
        expanded=[principal],
        label=x,
    )


def apply_box_minus_r(n: LabelledNode, principal: Labelled) -> LabelledNode:
    """Box rule on ``x: ~[]~A``: a new label y < x with ``y: A``, ``y: []~A`` and x's boxes.

    Raises:
        RuleApplicationError: The principal is absent or not a negated box
    """
    if principal not in n.formulas:
        raise RuleApplicationError(f"principal {show(principal)} is not in the node")
    x, f = principal
    if not (isinstance(f, Neg) and isinstance(f.body, BoxNeg)):
        raise RuleApplicationError(f"{show(principal)} is not a negated box")
    y = n.fresh_label()
    body = f.body.body
    return n.extend(
        formulas=[(y, body), (y, BoxNeg(body)), *boxes_to(n, x, y)],
        rels=[(y, x)],
        label=y,
    )


def modularity_applies(n: LabelledNode, rel: Relation, z: str) -> bool:
    x, y = rel
    return (
        rel in n.rels
        and z in n.labels
        and z not in rel
        and (x, z) not in n.rels
        and (z, y) not in n.rels
    )


def apply_modularity(n: LabelledNode, rel: Relation, z: str) -> Tuple[LabelledNode, LabelledNode]:
    """Modularity rule on ``x < y`` and ``z``: either z < y or x < z, with box propagation.

    Raises:
        RuleApplicationError: The side condition does not hold
    """
    if not modularity_applies(n, rel, z):
        raise RuleApplicationError(f"modularity does not apply to {rel[0]} < {rel[1]} and {z}")
    x, y = rel
    return (
        n.extend(rels=[(z, y)], formulas=boxes_to(n, y, z)),
        n.extend(rels=[(x, z)], formulas=boxes_to(n, z, x)),
    )


def _static_instances(n: LabelledNode) -> Iterator[Tuple[str, str, List[LabelledNode]]]:
    """Applicable static instances, non-branching boolean rules first, modularity last."""
    live = n.live()
    branching = []
    for item in live:
        found = boolean_conclusions(item[1])
        if found is None:
            continue
        rule, branches = found
        x = item[0]
        conclusions = [n.extend(formulas=[(x, g) for g in b], expanded=[item]) for b in branches]
        if len(conclusions) == 1:
            yield rule, show(item), conclusions
        else:
            branching.append((rule, show(item), conclusions))
    yield from branching
    conditionals = sorted(
        {f for _, f in n.formulas if isinstance(f, Cond)}, key=formula_key
    )
    for cond in conditionals:
        for y in n.labels:
            if (cond, y) in n.used:
                continue
            branches = [[Neg(cond.ante)], [Neg(BoxNeg(cond.ante))], [cond.cons]]
            conclusions = [
                n.extend(formulas=[(y, g) for g in b], used=[(cond, y)]) for b in branches
            ]
            yield RULE_COND_POS, f"{format_formula(cond)} at {y}", conclusions
    for rel in sorted(n.rels):
        for z in n.labels:
            if modularity_applies(n, rel, z):
                yield RULE_MODULARITY, f"{rel[0]} < {rel[1]} with {z}", list(
                    apply_modularity(n, rel, z)
                )


# -----------------------------------------------------
# Measure
# -----------------------------------------------------


def _multiset_less(m: Counter, n: Counter) -> bool:
    """Multiset ordering: ``m`` < ``n``."""
    if m == n:
        return False
    return all(
        any(y > x and n[y] > m[y] for y in n) for x in m if m[x] > n[x]
    )


@total_ordering
@dataclass(frozen=True)
class RMeasure:
    """Termination measure; ``c2`` is compared with the multiset ordering.

    c6 only separates the rule on a negated disjunction, which keeps the
    complexity sum c5 unchanged.
    """

    c1: int
    c2: Tuple[Tuple[int, int], ...]
    c3: int
    c4: int
    c5: int
    c6: int = 0

    def __lt__(self, other: "RMeasure") -> bool:
        if self.c1 != other.c1:
            return self.c1 < other.c1
        mine, theirs = Counter(self.c2), Counter(other.c2)
        if mine != theirs:
            return _multiset_less(mine, theirs)
        return (self.c3, self.c4, self.c5, self.c6) < (other.c3, other.c4, other.c5, other.c6)


def measure_r(n: LabelledNode) -> RMeasure:
    """Measure of a labelled node.

    c1 counts unexpanded negated conditionals. c2 holds, per label x, the
    pair of boxed antecedents missing at x and positive conditionals whose
    antecedent has no minimal world below x. c3 counts (label, conditional)
    pairs the positive conditional rule has not used yet, c4 the ordered
    pairs of distinct labels without a relation formula, c5 the complexity
    of formulas neither expanded nor considered and c6 the sum of their
    squared complexities.
    """
    live = n.formulas - n.expanded
    negative = {
        (x, c) for x, f in live for c in polar_conditionals([f])[1]
    }
    positive, negative_all = polar_conditionals(f for _, f in n.formulas)
    antecedents = {c.ante for c in positive | negative_all}
    pairs = []
    for x in n.labels:
        boxed = sum(1 for a in antecedents if (x, BoxNeg(a)) in n.formulas)
        witnessed = sum(
            1
            for c in positive
            if any(
                (y, c.ante) in n.formulas and (y, BoxNeg(c.ante)) in n.formulas
                for y, upper in n.rels
                if upper == x
            )
        )
        pairs.append((len(antecedents) - boxed, len(positive) - witnessed))
    pending = [complexity_cp(f) for _, f in live - n.considered]
    return RMeasure(
        c1=len(negative),
        c2=tuple(sorted(pairs, reverse=True)),
        c3=sum(1 for c in positive for x in n.labels if (c, x) not in n.used),
        c4=sum(1 for x in n.labels for y in n.labels if x != y and (x, y) not in n.rels),
        c5=sum(pending),
        c6=sum(cp * cp for cp in pending),
    )


# -----------------------------------------------------
# Check procedure
# -----------------------------------------------------


class RationalSearch:
    """Nondeterministic check procedure realized by backtracking over expansions."""

    def __init__(
        self,
        engine: str = ENGINE_DEFAULT,
        rule_order_seed: Optional[int] = None,
        trace: Optional[Trace] = None,
    ):
        self.engine = engine
        self.trace = trace
        self.rng = random.Random(rule_order_seed) if rule_order_seed is not None else None
        self.nodes = 0
        self.max_labels = 1
        self._memo: Dict[Tuple[LabelledNode, bool], Optional[LabelledNode]] = {}

    def _record(self, rule: str, principal: str, premise, conclusions) -> None:
        if self.trace is not None:
            self.trace.record(rule, principal, premise, conclusions)

    def _pick(self, n: LabelledNode):
        if self.rng is None:
            return next(_static_instances(n), None)
        candidates = list(_static_instances(n))
        return self.rng.choice(candidates) if candidates else None

    def expansions(self, n: LabelledNode) -> Iterator[LabelledNode]:
        """Open saturated expansions of ``n``, leftmost branch first."""
        stack = [n]
        while stack:
            m = stack.pop()
            self.max_labels = max(self.max_labels, len(m.labels))
            if is_axiom_r(m) or has_labelled_clash(m):
                continue
            found = self._pick(m)
            if found is None:
                self.nodes += 1
                yield m
                continue
            rule, principal, conclusions = found
            conclusions = informative_r(m, conclusions)
            self._record(rule, principal, m, conclusions)
            stack.extend(reversed(conclusions))

    def check(self, n: LabelledNode, started: bool = False) -> Optional[LabelledNode]:
        """Open saturated node reached from ``n`` with every negated box handled, or None."""
        key = (n, started)
        if key not in self._memo:
            self._memo[key] = self._check(n, started)
        return self._memo[key]

    def _check(self, n: LabelledNode, started: bool) -> Optional[LabelledNode]:
        for s in self.expansions(n):
            if not started:
                nxt = s
                for item in s.live():
                    f = item[1]
                    if isinstance(f, Neg) and isinstance(f.body, Cond):
                        before = nxt
                        nxt = apply_neg_cond_r(nxt, item)
                        self._record(RULE_COND_NEG, show(item), before, [nxt])
                result = self.check(nxt, True)
            else:
                pending = [
                    item
                    for item in sorted(s.formulas, key=_labelled_key)
                    if isinstance(item[1], Neg)
                    and isinstance(item[1].body, BoxNeg)
                    and item not in s.considered
                ]
                if not pending:
                    return s
                result = self.check(self._handle_box(s, pending[0]), True)
            if result is not None:
                return result
        return None

    def _handle_box(self, s: LabelledNode, item: Labelled) -> LabelledNode:
        y, f = item
        body = f.body.body
        if self.engine != ENGINE_NAIVE:
            for z in s.labels:
                if z != y and (z, body) in s.formulas and (z, BoxNeg(body)) in s.formulas:
                    nxt = s.extend(rels=[(z, y)], formulas=boxes_to(s, y, z), considered=[item])
                    self._record(RULE_REUSE, f"{show(item)} with {z}", s, [nxt])
                    return nxt
        nxt = apply_box_minus_r(s, item).extend(considered=[item])
        self._record(RULE_BOX_NEG, show(item), s, [nxt])
        return nxt


# -----------------------------------------------------
# Canonical model
# -----------------------------------------------------


def check_relations(n: LabelledNode) -> List[str]:
    """Sanity of an open saturated node: transitive, irreflexive, boxes propagated."""
    problems = []
    for x, y in sorted(n.rels):
        if x == y:
            problems.append(f"{x} < {x}")
        for y2, z in sorted(n.rels):
            if y == y2 and (x, z) not in n.rels:
                problems.append(f"missing {x} < {z}")
        for item in sorted(boxes_to(n, y, x), key=_labelled_key):
            if item not in n.formulas:
                problems.append(f"missing {show(item)}")
    return problems


def canonical_model(n: LabelledNode) -> PrefModel:
    """Ranked model of an open saturated node: labels are worlds.

    Raises:
        ModelError: The node violates the relational invariants or the model
            is not ranked
    """
    problems = check_relations(n)
    if problems:
        raise ModelError("open node is not relationally saturated: " + "; ".join(problems))
    model = PrefModel(
        worlds=n.labels,
        less=n.rels,
        val={
            x: frozenset(f.name for y, f in n.formulas if y == x and isinstance(f, Atom))
            for x in n.labels
        },
        logic=LOGIC_R,
    )
    violations = validate_model(model, LOGIC_R)
    if violations:
        raise ModelError("extracted model is not ranked: " + "; ".join(violations))
    return model


def decide_r(
    gamma: Iterable[Formula],
    *,
    engine: str = ENGINE_DEFAULT,
    rule_order_seed: Optional[int] = None,
    trace: Optional[Trace] = None,
) -> Verdict:
    """Decide rational satisfiability of ``gamma``.

    Args:
        gamma: Formulas of the base language
        engine: ``default`` reuses minimal worlds, ``naive`` always applies the box rule
        rule_order_seed: Shuffle the static rule order with this seed
        trace: Optional collector for rule applications

    Returns:
        Verdict; SAT answers carry the canonical ranked model, designated x0
    """
    if engine not in (ENGINE_DEFAULT, ENGINE_NAIVE):
        raise ValueError(f"unknown engine {engine!r}")
    start = time.perf_counter()
    formulas = list(gamma)
    require_language(formulas, LOGIC_R)
    search = RationalSearch(engine, rule_order_seed, trace)
    final = search.check(LabelledNode.root(formulas))

    verdict = Verdict(status=STATUS_UNSAT, logic=LOGIC_R, engine=engine, trace=trace)
    if final is not None:
        verdict.status = STATUS_SAT
        verdict.model = canonical_model(final)
        verdict.designated = ROOT_LABEL
    verdict.stats["nodes"] = search.nodes
    verdict.stats["labels"] = search.max_labels
    verdict.stats["millis"] = millis_since(start)
    logger.info(
        f"[ENGINE_R] {verdict.status} ({engine}) after {search.nodes} saturated nodes, "
        f"{search.max_labels} labels, in {verdict.stats['millis']} ms"
    )
    return verdict
