"""Tests for the preferential engine."""

import random
from dataclasses import astuple

import pytest

from ..engines.common import TableauNode, Trace, expand_static
from ..engines.preferential_engine import (
    apply_box_minus_plain,
    apply_box_minus_strong,
    apply_neg_cond_p,
    apply_neg_cond_plain,
    decide_p,
    measure_p,
)
from ..shared.constants import (
    BOOLEAN_RULES,
    LOGIC_P,
    RULE_BOX_NEG,
    RULE_BOX_NEG_STRONG,
    RULE_COND_NEG,
    RULE_COND_POS,
    STATUS_UNSAT,
)
from ..shared.errors import LanguageError, RuleApplicationError
from ..syntax.closure import box_disjunction
from ..syntax.formulas import Atom, BoxNeg, Cond, Neg, Or
from .helpers import assert_countermodel, fast_corpus, fs, random_conditional, random_inputs

a, b, m, w = Atom("a"), Atom("b"), Atom("m"), Atom("w")

TRIANGLE = ["adult |~ worker", "retired |~ adult", "retired |~ ~worker", "~(adult |~ ~retired)"]
RM_INSTANCE = ["a |~ w", "~(a |~ ~m)", "~(a & m |~ w)"]


# -----------------------------------------------------
# Rules
# -----------------------------------------------------


def test_strong_box_rule_keeps_other_disjunctions():
    """Test each conclusion makes one body minimal and keeps the other as a disjunction."""
    n = TableauNode.of([Neg(BoxNeg(a)), Neg(BoxNeg(b)), Cond(a, b)])
    conclusions = apply_box_minus_strong(n)
    assert len(conclusions) == 2
    first, second = conclusions
    assert {a, BoxNeg(a), box_disjunction(b), Cond(a, b)} <= first.gamma
    assert {b, BoxNeg(b), box_disjunction(a)} <= second.gamma


def test_strong_box_rule_with_box_closes():
    """Test a body already boxed closes its conclusion."""
    n = TableauNode.of([BoxNeg(a), Neg(BoxNeg(a))])
    (conclusion,) = apply_box_minus_strong(n)
    assert {a, Neg(a)} <= conclusion.gamma
    assert expand_static(conclusion, LOGIC_P) == []


def test_strong_box_rule_needs_negated_box():
    """Test the rule refuses nodes without a negated box."""
    with pytest.raises(RuleApplicationError):
        apply_box_minus_strong(TableauNode.of([a]))


def test_neg_cond_rules():
    """Test reformulated and plain negated-conditional rules."""
    c1, c2 = Neg(Cond(a, b)), Neg(Cond(b, a))
    n = TableauNode.of([c1, c2, m], [Cond(m, w)])
    reformulated = apply_neg_cond_p(n, c1)
    assert reformulated.gamma == {Cond(m, w), a, BoxNeg(a), Neg(b)}
    plain = apply_neg_cond_plain(n, c1)
    assert plain.gamma == {Cond(m, w), c2, a, BoxNeg(a), Neg(b)}
    with pytest.raises(RuleApplicationError):
        apply_neg_cond_p(n, Neg(Cond(w, w)))


def test_plain_box_rule():
    """Test the plain box rule keeps boxes and conditionals."""
    n = TableauNode.of([Neg(BoxNeg(a)), BoxNeg(b), Neg(Cond(a, b)), m])
    conclusion = apply_box_minus_plain(n, a)
    assert conclusion.gamma == {a, BoxNeg(a), BoxNeg(b), Neg(b), Neg(Cond(a, b))}
    with pytest.raises(RuleApplicationError):
        apply_box_minus_plain(n, b)


# -----------------------------------------------------
# Decisions
# -----------------------------------------------------


@pytest.mark.parametrize("engine", ["default", "naive"])
def test_triangle_is_unsat(engine):
    """Test the adult/worker/retired knowledge base refutes its negated consequence."""
    verdict = decide_p(fs(*TRIANGLE), engine=engine)
    assert verdict.status == STATUS_UNSAT
    assert verdict.model is None


@pytest.mark.parametrize("engine", ["default", "naive"])
def test_empty_set_is_sat(engine):
    """Test the empty set has a one-world model."""
    verdict = decide_p([], engine=engine)
    assert_countermodel(verdict, [])
    assert len(verdict.model.worlds) == 1


@pytest.mark.parametrize("engine", ["default", "naive"])
def test_rational_monotonicity_fails(engine):
    """Test the RM instance has a preferential countermodel."""
    gamma = fs(*RM_INSTANCE)
    verdict = decide_p(gamma, engine=engine)
    assert_countermodel(verdict, gamma)


def test_default_model_is_multilinear():
    """Test the default engine extracts disjoint chains."""
    gamma = fs(*RM_INSTANCE)
    verdict = decide_p(gamma)
    chains = verdict.model.tag.partition
    assert sorted(w for chain in chains for w in chain) == sorted(verdict.model.worlds)
    for chain in chains:
        for low, high in zip(chain, chain[1:]):
            assert (low, high) in verdict.model.less
    assert verdict.designated == chains[0][-1]


def test_satisfied_fact_with_unsatisfiable_conditional_elsewhere():
    """Test the root world is checked even when negated conditionals exist."""
    verdict = decide_p(fs("p", "p |~ ~p", "~(r |~ s)"))
    assert verdict.status == STATUS_UNSAT


def test_language_violation():
    """Test internal modalities are rejected."""
    with pytest.raises(LanguageError):
        decide_p([BoxNeg(a)])


def test_unknown_engine():
    """Test only default and naive exist."""
    with pytest.raises(ValueError):
        decide_p([], engine="oracle")


def test_stats_and_trace():
    """Test a verdict reports its work."""
    trace = Trace()
    verdict = decide_p(fs(*TRIANGLE), trace=trace)
    assert verdict.stats["nodes"] >= 0
    assert len(trace) > 0
    assert {s.rule for s in trace.steps} >= {RULE_COND_POS, RULE_COND_NEG, RULE_BOX_NEG_STRONG}


# -----------------------------------------------------
# Properties
# -----------------------------------------------------


def _assert_measure_decreases(trace: Trace) -> None:
    for step in trace.steps:
        before = measure_p(step.premise)
        for conclusion in step.conclusions:
            if not expand_static(conclusion, LOGIC_P):
                continue
            assert measure_p(conclusion) < before, step.rule


def test_measure_values():
    """Test the measure of small nodes."""
    assert astuple(measure_p(TableauNode.of([])))[:4] == (0, 0, 0, 0)
    assert astuple(measure_p(TableauNode.of([Cond(a, b)])))[:4] == (0, 1, 1, 5)
    assert astuple(measure_p(TableauNode.of([Neg(Cond(a, b))])))[:4] == (1, 0, 0, 6)
    split = measure_p(TableauNode.of([Neg(a), Neg(b)]))
    assert split.c4 == measure_p(TableauNode.of([Neg(Or(a, b))])).c4
    assert split < measure_p(TableauNode.of([Neg(Or(a, b))]))


@pytest.mark.parametrize("engine", ["default", "naive"])
@pytest.mark.parametrize(
    "gamma", [TRIANGLE, RM_INSTANCE, ["(a |~ b) -> ~(b |~ a)", "~(a | b |~ b)"]]
)
def test_measure_decreases(engine, gamma):
    """Test every recorded rule application lowers the measure."""
    trace = Trace()
    decide_p(fs(*gamma), engine=engine, trace=trace)
    expected = set(BOOLEAN_RULES) | {RULE_BOX_NEG, RULE_BOX_NEG_STRONG}
    assert {s.rule for s in trace.steps} & expected
    _assert_measure_decreases(trace)


def _check_random_measures(count: int) -> None:
    for gamma in random_inputs(seed=5, count=count):
        for engine in ("default", "naive"):
            trace = Trace()
            decide_p(gamma, engine=engine, trace=trace)
            _assert_measure_decreases(trace)


def test_measure_decreases_on_random_inputs():
    """Test the measure on a sample of random inputs."""
    _check_random_measures(40)


@pytest.mark.slow
def test_measure_decreases_on_thousand_random_inputs():
    """Test the measure on a thousand random inputs."""
    _check_random_measures(1000)


def test_engines_agree_and_models_check():
    """Test default and naive engines agree on the fast corpus."""
    for gamma in fast_corpus():
        default = decide_p(gamma)
        naive = decide_p(gamma, engine="naive")
        assert default.status == naive.status, gamma
        if default.is_sat:
            assert_countermodel(default, gamma)
            assert_countermodel(naive, gamma)


def _check_disjunction_property(count: int) -> int:
    rng = random.Random(17)
    refuted = 0
    for _ in range(count):
        kb = [random_conditional(rng) for _ in range(rng.randint(0, 2))]
        c1, c2 = Neg(random_conditional(rng)), Neg(random_conditional(rng))
        if decide_p(kb + [c1, c2]).status == STATUS_UNSAT:
            refuted += 1
            assert not decide_p(kb + [c1]).is_sat or not decide_p(kb + [c2]).is_sat, kb
    return refuted


def test_disjunction_property():
    """Test refuting two negated conditionals together refutes one of them alone."""
    kb = fs("a |~ b", "b |~ ~a")
    negated = fs("~(a |~ ~b)", "~(b |~ a)", "~(a & b |~ b)", "~(a |~ a & b)")
    for i, c1 in enumerate(negated):
        for c2 in negated[i + 1 :]:
            if decide_p(kb + [c1, c2]).status == STATUS_UNSAT:
                assert not decide_p(kb + [c1]).is_sat or not decide_p(kb + [c2]).is_sat
    _check_disjunction_property(20)


@pytest.mark.slow
def test_disjunction_property_on_random_knowledge_bases():
    """Test the disjunction property on two hundred random knowledge bases."""
    assert _check_disjunction_property(200) > 0
