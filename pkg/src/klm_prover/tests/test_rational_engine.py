"""Tests for the labelled rational engine."""

from collections import Counter

import pytest

from ..engines.common import Trace
from ..engines.preferential_engine import decide_p
from ..engines.rational_engine import (
    LabelledNode,
    RMeasure,
    RationalSearch,
    _multiset_less,
    apply_box_minus_r,
    apply_modularity,
    apply_neg_cond_r,
    canonical_model,
    check_relations,
    decide_r,
    is_axiom_r,
    measure_r,
)
from ..models.structures import ranks
from ..shared.constants import (
    BOOLEAN_RULES,
    RULE_COND_NEG,
    RULE_COND_POS,
    RULE_MODULARITY,
    RULE_REUSE,
    STATUS_UNSAT,
)
from ..shared.errors import ModelError, RuleApplicationError
from ..syntax.formulas import Atom, BoxNeg, Cond, Neg, size
from .helpers import assert_countermodel, fast_corpus, fs, random_inputs

a, b, m, w = Atom("a"), Atom("b"), Atom("m"), Atom("w")

RM_INSTANCE = ["a |~ w", "~(a |~ ~m)", "~(a & m |~ w)"]
RM_CONJUNCTION = ["(a |~ b) & ~(a |~ ~c)", "~(a & c |~ b)"]


# -----------------------------------------------------
# Nodes and rules
# -----------------------------------------------------


def test_axioms():
    """Test atomic clashes and relation cycles close a node."""
    assert is_axiom_r(LabelledNode(frozenset({("x0", a), ("x0", Neg(a))})))
    assert not is_axiom_r(LabelledNode(frozenset({("x0", a), ("x1", Neg(a))})))
    assert is_axiom_r(LabelledNode(frozenset(), rels=frozenset({("x0", "x1"), ("x1", "x0")})))
    assert is_axiom_r(LabelledNode(frozenset(), rels=frozenset({("x0", "x0")})))


def test_neg_cond_creates_fresh_label():
    """Test the negated conditional rule adds a new label with a minimal antecedent."""
    principal = ("x0", Neg(Cond(a, b)))
    n = LabelledNode.root([principal[1]])
    conclusion = apply_neg_cond_r(n, principal)
    assert conclusion.labels == ("x0", "x1")
    assert {("x1", a), ("x1", BoxNeg(a)), ("x1", Neg(b))} <= conclusion.formulas
    assert principal in conclusion.expanded
    with pytest.raises(RuleApplicationError):
        apply_neg_cond_r(n, ("x0", Cond(a, b)))


def test_box_rule_propagates_boxes():
    """Test the box rule adds a preferred label inheriting the boxes."""
    n = LabelledNode.root([Neg(BoxNeg(a)), BoxNeg(b)])
    conclusion = apply_box_minus_r(n, ("x0", Neg(BoxNeg(a))))
    assert ("x1", "x0") in conclusion.rels
    assert {("x1", a), ("x1", BoxNeg(a)), ("x1", BoxNeg(b)), ("x1", Neg(b))} <= conclusion.formulas
    with pytest.raises(RuleApplicationError):
        apply_box_minus_r(n, ("x0", BoxNeg(b)))


def test_modularity_rule():
    """Test modularity places a third label below the upper or above the lower one."""
    n = LabelledNode(
        frozenset({("x0", BoxNeg(a)), ("x2", BoxNeg(b))}),
        rels=frozenset({("x1", "x0")}),
        labels=("x0", "x1", "x2"),
    )
    below_upper, above_lower = apply_modularity(n, ("x1", "x0"), "x2")
    assert ("x2", "x0") in below_upper.rels
    assert ("x2", BoxNeg(a)) in below_upper.formulas
    assert ("x1", "x2") in above_lower.rels
    assert ("x1", BoxNeg(b)) in above_lower.formulas
    assert ("x1", Neg(b)) in above_lower.formulas
    with pytest.raises(RuleApplicationError):
        apply_modularity(below_upper, ("x1", "x0"), "x2")


def test_canonical_model_rejects_unsaturated_nodes():
    """Test missing transitivity is reported."""
    n = LabelledNode(
        frozenset(),
        rels=frozenset({("x2", "x1"), ("x1", "x0")}),
        labels=("x0", "x1", "x2"),
    )
    assert check_relations(n) == ["missing x2 < x0"]
    with pytest.raises(ModelError):
        canonical_model(n)


# -----------------------------------------------------
# Measure
# -----------------------------------------------------


def test_multiset_ordering():
    """Test replacing an element by smaller ones decreases the multiset."""
    assert _multiset_less(Counter([(1, 1), (0, 3), (0, 2)]), Counter([(2, 0)]))
    assert not _multiset_less(Counter([(2, 0)]), Counter([(2, 0)]))
    assert not _multiset_less(Counter([(2, 0), (0, 0)]), Counter([(2, 0)]))
    assert RMeasure(0, ((1, 1),), 5, 5, 5) < RMeasure(0, ((2, 0),), 0, 0, 0)
    assert RMeasure(0, ((2, 0),), 0, 0, 0) < RMeasure(1, (), 0, 0, 0)


def test_cond_pos_marks_label_used():
    """Test the positive conditional rule leaves no unused pair behind."""
    n = LabelledNode.root([Cond(a, b)])
    search = RationalSearch()
    (s, *_) = list(search.expansions(n))
    assert (Cond(a, b), "x0") in s.used
    assert measure_r(s).c3 == 0
    assert measure_r(n).c3 == 1


def _assert_measure_decreases(trace: Trace) -> None:
    search = RationalSearch()
    for step in trace.steps:
        before = measure_r(step.premise)
        for conclusion in step.conclusions:
            if next(search.expansions(conclusion), None) is None:
                continue
            assert measure_r(conclusion) < before, step.rule


@pytest.mark.parametrize(
    "gamma", [RM_INSTANCE, RM_CONJUNCTION, ["a |~ b", "~(b |~ a)", "~(a | b |~ b)"]]
)
def test_measure_decreases(gamma):
    """Test every recorded rule application lowers the measure."""
    trace = Trace()
    decide_r(fs(*gamma), trace=trace)
    rules = {s.rule for s in trace.steps}
    assert rules & set(BOOLEAN_RULES)
    assert {RULE_COND_POS, RULE_COND_NEG} <= rules
    _assert_measure_decreases(trace)


def test_measure_decreases_on_modularity_and_reuse():
    """Test relation-adding steps lower the measure."""
    trace = Trace()
    decide_r(fs("a", "a |~ b", "~(a |~ c)", "~(c |~ a)", "c |~ ~a"), trace=trace)
    assert {RULE_MODULARITY, RULE_REUSE} <= {s.rule for s in trace.steps}
    _assert_measure_decreases(trace)


def test_measure_ignores_considered_boxes():
    """Test marking a negated box as handled lowers the measure."""
    n = LabelledNode.root([Neg(BoxNeg(a))])
    handled = n.extend(considered=[("x0", Neg(BoxNeg(a)))])
    assert measure_r(handled) < measure_r(n)
    spread = LabelledNode(frozenset(), rels=frozenset({("x1", "x0")}), labels=("x0", "x1"))
    assert measure_r(spread).c4 == 1


def _check_random_runs(count: int) -> None:
    for gamma in random_inputs(seed=9, count=count):
        trace = Trace()
        verdict = decide_r(gamma, trace=trace)
        assert verdict.stats["labels"] <= 2 * size(gamma), gamma
        _assert_measure_decreases(trace)


def test_measure_decreases_on_random_inputs():
    """Test the measure and the label bound on a sample of random inputs."""
    _check_random_runs(40)


@pytest.mark.slow
def test_measure_decreases_on_thousand_random_inputs():
    """Test the measure and the label bound on a thousand random inputs."""
    _check_random_runs(1000)


# -----------------------------------------------------
# Decisions
# -----------------------------------------------------


@pytest.mark.parametrize("engine", ["default", "naive"])
def test_rational_monotonicity_holds(engine):
    """Test RM instances are refuted in R but not in P."""
    for gamma in (fs(*RM_INSTANCE), fs(*RM_CONJUNCTION)):
        assert decide_r(gamma, engine=engine).status == STATUS_UNSAT
    assert decide_p(fs(*RM_INSTANCE)).is_sat


@pytest.mark.parametrize("engine", ["default", "naive"])
def test_ranked_countermodel(engine):
    """Test SAT answers carry a canonical ranked model with designated x0."""
    gamma = fs("a |~ w", "~(a |~ ~m)", "~(m |~ a)")
    verdict = decide_r(gamma, engine=engine)
    assert_countermodel(verdict, gamma)
    assert verdict.designated == "x0"
    assert set(ranks(verdict.model)) == set(verdict.model.worlds)


def test_reuse_of_minimal_worlds():
    """Test the default engine reuses a label already minimal for the antecedent."""
    gamma = fs("a", "a |~ b", "~(a |~ c)")
    trace = Trace()
    verdict = decide_r(gamma, trace=trace)
    assert_countermodel(verdict, gamma)
    assert any(s.rule == RULE_REUSE for s in trace.steps)
    assert ("x1", "x0") in verdict.model.less
    naive = decide_r(gamma, engine="naive")
    assert_countermodel(naive, gamma)


def test_label_count_bound():
    """Test runs stay within twice the input size in labels."""
    for gamma in fast_corpus():
        verdict = decide_r(gamma)
        assert verdict.stats["labels"] <= 2 * size(gamma)


def test_rule_order_independence():
    """Test shuffled static rule orders give the same verdicts."""
    for gamma in fast_corpus()[:20]:
        expected = decide_r(gamma).status
        for seed in (1, 2, 3):
            verdict = decide_r(gamma, rule_order_seed=seed)
            assert verdict.status == expected, (gamma, seed)
            if verdict.is_sat:
                assert_countermodel(verdict, gamma)


def test_engines_agree_on_fast_corpus():
    """Test default and naive engines agree and models check."""
    for gamma in fast_corpus():
        default = decide_r(gamma)
        assert decide_r(gamma, engine="naive").status == default.status, gamma
        if default.is_sat:
            assert_countermodel(default, gamma)


def test_refutation_with_idle_conditionals():
    """Test a set refuted by one conditional is closed despite branching on the others."""
    gamma = fs("b |~ a", "c |~ c", "~b |~ b & a", "~(~b |~ c)", "~(c | ~b |~ ~c)")
    assert decide_r(gamma).status == STATUS_UNSAT
    assert decide_r(gamma, engine="naive").status == STATUS_UNSAT
