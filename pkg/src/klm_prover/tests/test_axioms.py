"""Axiom suites: negated instances of valid rules are refuted in every logic that has them."""

import random

import pytest

from ..engines import decide_c, decide_cl, decide_p, decide_r
from ..shared.constants import LOGIC_C, LOGIC_CL, LOGIC_P, LOGIC_R, STATUS_UNSAT
from ..syntax.formulas import And, Atom, Cond, Implies, Neg, Or
from .helpers import fs

ATOMS = [Atom("p"), Atom("q"), Atom("r")]

DECIDERS = {
    LOGIC_C: decide_c,
    LOGIC_CL: decide_cl,
    LOGIC_P: decide_p,
    LOGIC_R: decide_r,
}

# Instances per schema in the full random suite
FULL_SAMPLE = 100


def random_formula(rng: random.Random, depth: int = 1):
    """Small random propositional formula over p, q and r."""
    if depth == 0 or rng.random() < 0.4:
        atom = rng.choice(ATOMS)
        return Neg(atom) if rng.random() < 0.3 else atom
    left, right = random_formula(rng, depth - 1), random_formula(rng, depth - 1)
    return rng.choice([And, Or, Implies])(left, right)


def ref(a, b, c, d):
    return [Neg(Cond(a, a))]


def lle(a, b, c, d):
    return [Cond(a, c), Neg(Cond(Neg(Neg(a)), c))]


def rw(a, b, c, d):
    return [Cond(a, b), Neg(Cond(a, Or(b, c)))]


def cm(a, b, c, d):
    return [Cond(a, b), Cond(a, c), Neg(Cond(And(a, b), c))]


def and_(a, b, c, d):
    return [Cond(a, b), Cond(a, c), Neg(Cond(a, And(b, c)))]


def cut(a, b, c, d):
    return [Cond(a, b), Cond(And(a, b), c), Neg(Cond(a, c))]


def loop(a, b, c, d):
    return [Cond(a, b), Cond(b, c), Cond(c, a), Neg(Cond(a, c))]


def loop3(a, b, c, d):
    return [Cond(a, b), Cond(b, c), Cond(c, d), Cond(d, a), Neg(Cond(a, d))]


def or_(a, b, c, d):
    return [Cond(a, c), Cond(b, c), Neg(Cond(Or(a, b), c))]


def rm(a, b, c, d):
    return [Cond(a, b), Neg(Cond(a, Neg(c))), Neg(Cond(And(a, c), b))]


CUMULATIVE_AXIOMS = [ref, lle, rw, cm, and_, cut]

VALID = {
    LOGIC_C: CUMULATIVE_AXIOMS,
    LOGIC_CL: CUMULATIVE_AXIOMS + [loop, loop3],
    LOGIC_P: CUMULATIVE_AXIOMS + [loop, loop3, or_],
    LOGIC_R: CUMULATIVE_AXIOMS + [loop, loop3, or_, rm],
}


def _instances(seed: int, count: int):
    rng = random.Random(seed)
    return [tuple(random_formula(rng) for _ in range(4)) for _ in range(count)]


def _assert_refuted(logic: str, axiom, instance) -> None:
    gamma = axiom(*instance)
    assert DECIDERS[logic](gamma).status == STATUS_UNSAT, (logic, axiom.__name__, gamma)


@pytest.mark.parametrize("logic", [LOGIC_C, LOGIC_CL, LOGIC_P, LOGIC_R])
def test_valid_axioms_on_atoms(logic):
    """Test atomic instances of every axiom of the logic are valid."""
    atoms = (*ATOMS, Atom("s"))
    for axiom in VALID[logic]:
        _assert_refuted(logic, axiom, atoms)


@pytest.mark.parametrize("logic", [LOGIC_CL, LOGIC_P, LOGIC_R])
def test_valid_axioms_on_random_instances(logic):
    """Test random propositional instances of the axioms are valid."""
    for instance in _instances(seed=7, count=2):
        for axiom in VALID[logic]:
            _assert_refuted(logic, axiom, instance)


@pytest.mark.slow
@pytest.mark.parametrize("logic", [LOGIC_C, LOGIC_CL, LOGIC_P, LOGIC_R])
def test_valid_axioms_full_random_suite(logic):
    """Test a hundred random instances of each axiom schema of the logic."""
    instances = _instances(seed=2024, count=FULL_SAMPLE)
    for axiom in VALID[logic]:
        for instance in instances:
            _assert_refuted(logic, axiom, instance)


def test_invalid_axioms():
    """Test each logic fails the axioms of the stronger ones."""
    p, q, r = ATOMS
    s = Atom("s")
    assert decide_c(loop(p, q, r, s)).is_sat
    assert decide_cl(or_(p, q, r, s)).is_sat
    assert decide_p(rm(Atom("a"), Atom("w"), Atom("m"), s)).is_sat
    assert decide_r(rm(Atom("a"), Atom("w"), Atom("m"), s)).status == STATUS_UNSAT


def test_knowledge_base_triangle():
    """Test the adult/worker/retired entailment in P and R."""
    gamma = fs("adult |~ worker", "retired |~ adult", "retired |~ ~worker", "~(adult |~ ~retired)")
    for logic in (LOGIC_P, LOGIC_R):
        assert DECIDERS[logic](gamma).status == STATUS_UNSAT
