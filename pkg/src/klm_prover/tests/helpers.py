"""Shared inputs for the test modules."""

import itertools
import random
from typing import Iterator, List

from ..models.evaluation import satisfies_all, validate_model
from ..syntax.formulas import And, Atom, Cond, Formula, Implies, Neg, Or
from ..syntax.parser import parse_formula


def fs(*texts: str) -> List[Formula]:
    """Parse each text into a formula."""
    return [parse_formula(t) for t in texts]


LITERALS = [Atom("a"), Neg(Atom("a")), Atom("b"), Neg(Atom("b"))]
CONDITIONALS = [Cond(x, y) for x in LITERALS for y in LITERALS]


def tiny_corpus() -> Iterator[List[Formula]]:
    """Knowledge bases of at most two conditionals over literals of a and b, plus a negated one."""
    for k in range(3):
        for kb in itertools.combinations(CONDITIONALS, k):
            for negated in CONDITIONALS:
                if negated in kb:
                    continue
                yield list(kb) + [Neg(negated)]


def fast_corpus() -> List[List[Formula]]:
    """Every 23rd case of the tiny corpus."""
    return [case for i, case in enumerate(tiny_corpus()) if i % 23 == 0]


# -----------------------------------------------------
# Random inputs
# -----------------------------------------------------

RANDOM_ATOMS = [Atom("a"), Atom("b"), Atom("c")]


def random_literal_formula(rng: random.Random) -> Formula:
    """A literal, or a conjunction or disjunction of two literals, over a, b and c."""
    literals = [rng.choice(RANDOM_ATOMS) for _ in range(2)]
    literals = [Neg(x) if rng.random() < 0.3 else x for x in literals]
    shape = rng.random()
    if shape < 0.6:
        return literals[0]
    return (And if shape < 0.8 else Or)(*literals)


def random_conditional(rng: random.Random) -> Cond:
    return Cond(random_literal_formula(rng), random_literal_formula(rng))


def random_gamma(rng: random.Random) -> List[Formula]:
    """Up to three conditionals, some negated or joined by a connective, plus an optional fact."""
    formulas: List[Formula] = []
    for _ in range(rng.randint(1, 3)):
        cond = random_conditional(rng)
        formulas.append(Neg(cond) if rng.random() < 0.5 else cond)
    if len(formulas) >= 2 and rng.random() < 0.3:
        right, left = formulas.pop(), formulas.pop()
        formulas.append(rng.choice([Or, Implies])(left, right))
    if rng.random() < 0.3:
        formulas.append(random_literal_formula(rng))
    return formulas


def random_inputs(seed: int, count: int) -> List[List[Formula]]:
    """``count`` random inputs over at most three atoms and three conditionals."""
    rng = random.Random(seed)
    return [random_gamma(rng) for _ in range(count)]


def assert_countermodel(verdict, gamma: List[Formula]) -> None:
    """A SAT verdict ships a well-formed model satisfying ``gamma`` at its designated point."""
    assert verdict.is_sat
    assert verdict.model is not None
    assert validate_model(verdict.model, verdict.logic) == []
    assert satisfies_all(verdict.model, verdict.designated, gamma)
