"""Bounded enumeration of finite models.

Worlds whose valuation repeats one strictly below them can never be minimal
for any formula, so they are never generated: ranked models use each
valuation at most once and every chain of a multi-linear model lists distinct
valuations. When ``relevant`` formulas are supplied, valuations (and state
labels) that agree on all of them are interchangeable and only one
representative of each class is used. Neither reduction loses a satisfiable
instance.
"""

import itertools
import logging
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from ..shared.constants import LOGIC_C, LOGIC_CL, LOGIC_P, LOGIC_R
from ..syntax.formulas import Formula
from .evaluation import eval_propositional
from .structures import Model, MultiLinearTag, PrefModel, StateModel

logger = logging.getLogger(__name__)

Valuation = FrozenSet[str]


def all_valuations(atoms: Iterable[str]) -> List[Valuation]:
    """Every valuation over ``atoms``, in a fixed order."""
    names = sorted(set(atoms))
    return [
        frozenset(name for name, bit in zip(names, bits) if bit)
        for bits in itertools.product((False, True), repeat=len(names))
    ]


def representative_valuations(
    atoms: Iterable[str], relevant: Optional[Sequence[Formula]] = None
) -> List[Valuation]:
    """One valuation per class of valuations agreeing on ``relevant``."""
    valuations = all_valuations(atoms)
    if relevant is None:
        return valuations
    seen: Dict[Tuple[bool, ...], Valuation] = {}
    for v in valuations:
        profile = tuple(eval_propositional(v, f) for f in relevant)
        seen.setdefault(profile, v)
    return list(seen.values())


def _ordered_partitions(items: Tuple[int, ...]) -> Iterator[List[Tuple[int, ...]]]:
    if not items:
        yield []
        return
    for r in range(1, len(items) + 1):
        for first in itertools.combinations(items, r):
            rest = tuple(i for i in items if i not in first)
            for tail in _ordered_partitions(rest):
                yield [first] + tail


@lru_cache(maxsize=None)
def strict_partial_orders(n: int) -> Tuple[FrozenSet[Tuple[int, int]], ...]:
    """All irreflexive transitive relations on ``range(n)``."""
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    result = []
    for mask in range(1 << len(pairs)):
        rel = frozenset(p for k, p in enumerate(pairs) if mask >> k & 1)
        if any((j, i) in rel for i, j in rel):
            continue
        if all((i, l) in rel for i, j in rel for k, l in rel if j == k):
            result.append(rel)
    return tuple(result)


def _irreflexive_relations(pairs: Sequence[Tuple[int, int]]) -> Iterator[FrozenSet]:
    for mask in range(1 << len(pairs)):
        yield frozenset(p for k, p in enumerate(pairs) if mask >> k & 1)


# -----------------------------------------------------
# Preferential and ranked models
# -----------------------------------------------------


def _ranked_models(valuations: List[Valuation], bound: int) -> Iterator[PrefModel]:
    indices = tuple(range(len(valuations)))
    for k in range(1, min(bound, len(valuations)) + 1):
        for subset in itertools.combinations(indices, k):
            for levels in _ordered_partitions(subset):
                worlds, val, rank = [], {}, {}
                for level, members in enumerate(levels):
                    for i in members:
                        w = f"w{len(worlds)}"
                        worlds.append(w)
                        val[w] = valuations[i]
                        rank[w] = level
                less = frozenset(
                    (u, v) for u in worlds for v in worlds if rank[u] < rank[v]
                )
                yield PrefModel(worlds=tuple(worlds), less=less, val=val, logic=LOGIC_R)


def _chains(valuations: List[Valuation], bound: int) -> List[Tuple[int, ...]]:
    indices = range(len(valuations))
    chains: List[Tuple[int, ...]] = []
    for length in range(1, min(bound, len(valuations)) + 1):
        chains.extend(itertools.permutations(indices, length))
    return chains


def _chain_sets(
    chains: List[Tuple[int, ...]], start: int, budget: int
) -> Iterator[List[Tuple[int, ...]]]:
    for i in range(start, len(chains)):
        chain = chains[i]
        if len(chain) > budget:
            continue
        yield [chain]
        for rest in _chain_sets(chains, i + 1, budget - len(chain)):
            yield [chain] + rest


def _multilinear_models(valuations: List[Valuation], bound: int) -> Iterator[PrefModel]:
    for chain_set in _chain_sets(_chains(valuations, bound), 0, bound):
        worlds, val, less, partition = [], {}, set(), []
        for chain in chain_set:
            members = []
            for i in chain:
                w = f"w{len(worlds)}"
                worlds.append(w)
                val[w] = valuations[i]
                members.append(w)
            less.update(
                (members[a], members[b])
                for a in range(len(members))
                for b in range(a + 1, len(members))
            )
            partition.append(tuple(members))
        yield PrefModel(
            worlds=tuple(worlds),
            less=frozenset(less),
            val=val,
            logic=LOGIC_P,
            tag=MultiLinearTag(partition=tuple(partition)),
        )


def _partial_order_models(valuations: List[Valuation], bound: int) -> Iterator[PrefModel]:
    indices = range(len(valuations))
    for n in range(1, bound + 1):
        orders = strict_partial_orders(n)
        for assignment in itertools.combinations_with_replacement(indices, n):
            worlds = tuple(f"w{i}" for i in range(n))
            val = {worlds[i]: valuations[assignment[i]] for i in range(n)}
            for rel in orders:
                less = frozenset((worlds[i], worlds[j]) for i, j in rel)
                yield PrefModel(worlds=worlds, less=less, val=val, logic=LOGIC_P)


# -----------------------------------------------------
# State models
# -----------------------------------------------------


def _label_options(
    valuations: List[Valuation],
    bound: int,
    relevant: Optional[Sequence[Formula]],
    antecedents: Optional[Sequence[Formula]],
) -> List[FrozenSet[int]]:
    indices = range(len(valuations))
    subsets = [
        frozenset(c)
        for r in range(1, len(valuations) + 1)
        for c in itertools.combinations(indices, r)
    ]
    if relevant is None:
        return [s for s in subsets if len(s) <= bound]
    options: Dict[Tuple[bool, ...], FrozenSet[int]] = {}
    for s in subsets:
        profile = tuple(
            all(eval_propositional(valuations[i], f) for i in s) for f in relevant
        )
        options.setdefault(profile, s)
    chosen = list(options.values())
    if antecedents is not None:
        observed = [
            s
            for s in chosen
            if any(all(eval_propositional(valuations[i], a) for i in s) for a in antecedents)
        ]
        chosen = observed or chosen[:1]
    return chosen


def _state_models(
    valuations: List[Valuation],
    bound: int,
    logic: str,
    relevant: Optional[Sequence[Formula]],
    antecedents: Optional[Sequence[Formula]],
) -> Iterator[StateModel]:
    options = _label_options(valuations, bound, relevant, antecedents)
    worlds = tuple(f"w{i}" for i in range(len(valuations)))
    val = {worlds[i]: valuations[i] for i in range(len(valuations))}
    for n in range(1, bound + 1):
        for chosen in itertools.combinations_with_replacement(range(len(options)), n):
            labels = [options[k] for k in chosen]
            if relevant is None and len(frozenset().union(*labels)) > bound:
                continue
            states = tuple(f"s{i}" for i in range(n))
            label = {states[i]: frozenset(worlds[j] for j in labels[i]) for i in range(n)}
            if logic == LOGIC_CL:
                relations: Iterable[FrozenSet] = strict_partial_orders(n)
            else:
                pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
                if antecedents is not None:
                    pairs = [
                        (i, j)
                        for i, j in pairs
                        if any(
                            all(eval_propositional(valuations[x], a) for x in labels[i] | labels[j])
                            for a in antecedents
                        )
                    ]
                relations = _irreflexive_relations(pairs)
            for rel in relations:
                less = frozenset((states[i], states[j]) for i, j in rel)
                yield StateModel(
                    states=states, worlds=worlds, label=label, less=less, val=val, logic=logic
                )


def enumerate_models(
    atoms: Iterable[str],
    bound: int,
    logic: str,
    *,
    full_orders: bool = False,
    relevant: Optional[Sequence[Formula]] = None,
    antecedents: Optional[Sequence[Formula]] = None,
) -> Iterator[Model]:
    """Yield every model of ``logic`` up to ``bound`` worlds (P, R) or states (CL, C).

    Args:
        atoms: Atoms the valuations range over
        bound: Maximum number of worlds or states (at least 1)
        logic: One of c, cl, p, r
        full_orders: For P, enumerate every strict partial order instead of
            multi-linear models only
        relevant: Propositional formulas the caller evaluates; valuations and
            labels agreeing on all of them are generated once
        antecedents: For state models, skip states satisfying none of these
            and, for C, preference pairs no antecedent can observe

    Returns:
        Generator of models
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    valuations = representative_valuations(atoms, relevant)
    logger.debug(f"[ORACLE] enumerating {logic} models over {len(valuations)} valuations")
    if logic == LOGIC_R:
        yield from _ranked_models(valuations, bound)
    elif logic == LOGIC_P:
        if full_orders:
            yield from _partial_order_models(valuations, bound)
        else:
            yield from _multilinear_models(valuations, bound)
    elif logic in (LOGIC_CL, LOGIC_C):
        yield from _state_models(valuations, bound, logic, relevant, antecedents)
    else:
        raise ValueError(f"unsupported logic {logic!r}")
