"""Tests for the cumulative engine."""

import pytest

from ..engines.common import RuleApplication, TableauNode, Trace
from ..engines.cumulative_engine import (
    RefutabilityTable,
    applicable_rule_instances_c,
    decide_c,
)
from ..engines.loop_cumulative_engine import decide_cl
from ..shared.constants import (
    OPEN,
    PENDING,
    REFUTABLE,
    RULE_AND_POS,
    RULE_AXIOM,
    RULE_COND_NEG,
    RULE_COND_POS,
    RULE_L_NEG,
    STATUS_SAT,
    STATUS_UNSAT,
)
from ..shared.errors import RuleApplicationError
from ..syntax.formulas import And, Atom, BoxNeg, Cond, LMod, Neg
from .helpers import fast_corpus, fs

a, b, c = Atom("a"), Atom("b"), Atom("c")

WEAK_CUT = ["~(a |~ c)", "a |~ b", "b |~ a", "b |~ c"]
LOOP_CYCLE = ["~(c |~ b)", "c |~ a", "a |~ b", "b |~ c"]
CUT_INSTANCE = ["a |~ b", "a & b |~ c", "~(a |~ c)"]


def test_boolean_rules_come_first():
    """Test a node with a boolean formula has only that instance."""
    n = TableauNode.of([And(a, b), Cond(a, b)])
    (inst,) = applicable_rule_instances_c(n)
    assert inst.rule == RULE_AND_POS
    assert inst.conclusions == (TableauNode.of([a, b, Cond(a, b)]),)


def test_conditional_rule_instances():
    """Test the positive conditional rule has three conclusions, the middle one a jump."""
    n = TableauNode.of([Cond(a, b), Neg(Cond(b, c)), BoxNeg(LMod(c))])
    instances = applicable_rule_instances_c(n)
    by_rule = {inst.rule: inst for inst in instances}
    first, jump, third = by_rule[RULE_COND_POS].conclusions
    assert Neg(LMod(a)) in first.gamma
    assert jump.gamma == {
        Cond(a, b),
        Neg(Cond(b, c)),
        Neg(LMod(c)),
        LMod(a),
        BoxNeg(LMod(a)),
    }
    assert {LMod(a), BoxNeg(LMod(a)), LMod(b)} <= third.gamma
    (neg,) = by_rule[RULE_COND_NEG].conclusions
    assert neg.gamma == {Cond(a, b), Neg(Cond(b, c)), LMod(b), BoxNeg(LMod(b)), Neg(LMod(c))}


def test_L_instances():
    """Test one L instance per negated L-formula, or a single one."""
    n = TableauNode.of([LMod(a), Neg(LMod(b)), Neg(LMod(c))])
    instances = [i for i in applicable_rule_instances_c(n) if i.rule == RULE_L_NEG]
    assert [i.conclusions for i in instances] == [
        (TableauNode.of([a, Neg(b)]),),
        (TableauNode.of([a, Neg(c)]),),
    ]
    (single,) = applicable_rule_instances_c(TableauNode.of([LMod(a)]))
    assert single.conclusions == (TableauNode.of([a]),)


def test_refutability_table():
    """Test statuses, ranks and the fixpoint closing step."""
    table = RefutabilityTable()
    leaf = TableauNode.of([a, Neg(a)])
    parent = TableauNode.of([And(a, Neg(a))])
    other = TableauNode.of([b])
    for n in (leaf, parent, other):
        table.discover(n)
    assert table.status(parent) == PENDING
    table.mark_refutable(leaf, None)
    via = RuleApplication(RULE_AND_POS, "a & ~a", parent, (leaf,))
    table.mark_refutable(parent, via)
    assert table.rank(leaf) == 0
    assert table.rank(parent) == 1
    assert table.justification(parent) is via
    table.close()
    assert table.status(parent) == REFUTABLE
    assert table.status(other) == OPEN
    with pytest.raises(RuleApplicationError):
        table.mark_refutable(other, None)


@pytest.mark.parametrize("gamma", [WEAK_CUT, CUT_INSTANCE])
def test_unsat_examples(gamma):
    """Test the weak-cut and CUT instances are refuted."""
    assert decide_c(fs(*gamma)).status == STATUS_UNSAT


def test_loop_cycle_is_sat_in_c_only():
    """Test the LOOP consequence fails in C but holds in CL."""
    gamma = fs(*LOOP_CYCLE)
    verdict = decide_c(gamma)
    assert verdict.status == STATUS_SAT
    assert verdict.model is None
    assert decide_cl(gamma).status == STATUS_UNSAT


def test_proof_uses_jump_conclusion():
    """Test the closed tableau of the weak-cut instance goes through a jump."""
    trace = Trace()
    decide_c(fs(*WEAK_CUT), trace=trace)
    assert all(s.closed for s in trace.steps)
    assert any(s.rule == RULE_AXIOM for s in trace.steps)
    jumps = [
        s
        for s in trace.steps
        if s.rule == RULE_COND_POS and s.conclusions[1] in {t.premise for t in trace.steps}
    ]
    assert jumps


def test_sat_has_no_trace():
    """Test open roots leave the trace empty."""
    trace = Trace()
    decide_c(fs("a |~ b"), trace=trace)
    assert len(trace) == 0


def test_verdicts_contained_in_cl():
    """Test everything refuted in C is refuted in CL."""
    for gamma in fast_corpus():
        if decide_c(gamma).status == STATUS_UNSAT:
            assert decide_cl(gamma).status == STATUS_UNSAT, gamma
