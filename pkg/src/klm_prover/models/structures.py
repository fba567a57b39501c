"""Finite model structures for C, CL, P and R.

``PrefModel`` covers preferential (P) and ranked (R) models: worlds, a strict
preference ``less`` of ``(lower, upper)`` pairs and a valuation.
``StateModel`` covers loop-cumulative (CL) and cumulative (C) models: states
labelled by nonempty sets of worlds, preference between states, and a
valuation of the worlds.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, List, Mapping, Optional, Tuple, Union

from ..shared.constants import LOGIC_CL, LOGIC_P, LOGIC_R

Pair = Tuple[str, str]


@dataclass(frozen=True)
class MultiLinearTag:
    """Chains of a multi-linear model, each listed from its least world up."""

    partition: Tuple[Tuple[str, ...], ...]


@dataclass(frozen=True, eq=False)
class PrefModel:
    worlds: Tuple[str, ...]
    less: FrozenSet[Pair]
    val: Mapping[str, FrozenSet[str]]
    logic: str = LOGIC_P
    tag: Optional[MultiLinearTag] = None

    @cached_property
    def below(self) -> Dict[str, FrozenSet[str]]:
        """World -> worlds strictly preferred to it."""
        lower: Dict[str, set] = {w: set() for w in self.worlds}
        for low, high in self.less:
            lower[high].add(low)
        return {w: frozenset(ws) for w, ws in lower.items()}

    @cached_property
    def memo(self) -> Dict:
        return {}

    @property
    def points(self) -> Tuple[str, ...]:
        return self.worlds


@dataclass(frozen=True, eq=False)
class StateModel:
    states: Tuple[str, ...]
    worlds: Tuple[str, ...]
    label: Mapping[str, FrozenSet[str]]
    less: FrozenSet[Pair]
    val: Mapping[str, FrozenSet[str]]
    logic: str = LOGIC_CL

    @cached_property
    def below(self) -> Dict[str, FrozenSet[str]]:
        """State -> states strictly preferred to it."""
        lower: Dict[str, set] = {s: set() for s in self.states}
        for low, high in self.less:
            lower[high].add(low)
        return {s: frozenset(ss) for s, ss in lower.items()}

    @cached_property
    def memo(self) -> Dict:
        return {}

    @property
    def points(self) -> Tuple[str, ...]:
        return self.states


Model = Union[PrefModel, StateModel]


def ranks(m: PrefModel) -> Dict[str, int]:
    """Integer level of every world of a ranked model (0 = most preferred)."""
    result: Dict[str, int] = {}
    remaining = set(m.worlds)
    level = 0
    while remaining:
        layer = {w for w in remaining if not (m.below[w] & remaining)}
        if not layer:
            raise ValueError("preference relation has a cycle")
        for w in layer:
            result[w] = level
        remaining -= layer
        level += 1
    return result


def as_state_model(m: PrefModel) -> StateModel:
    """Embed a preferential model as a loop-cumulative model with singleton labels."""
    states = tuple(f"s_{w}" for w in m.worlds)
    return StateModel(
        states=states,
        worlds=m.worlds,
        label={f"s_{w}": frozenset({w}) for w in m.worlds},
        less=frozenset((f"s_{a}", f"s_{b}") for a, b in m.less),
        val=dict(m.val),
        logic=LOGIC_CL,
    )


def _valuation_list(atoms: FrozenSet[str]) -> List[str]:
    return sorted(atoms)


def model_to_dict(m: Model, designated: Optional[str] = None) -> Dict:
    """JSON-ready description with sorted worlds, states and pairs.

    Args:
        m: Model to describe
        designated: Evaluation point, if any

    Returns:
        Dictionary with worlds/valuations, order pairs, ranks (R) or labels
        (state models) and the designated point
    """
    data: Dict = {
        "kind": "preferential" if isinstance(m, PrefModel) else "state",
        "logic": m.logic,
        "worlds": {w: _valuation_list(m.val[w]) for w in sorted(m.worlds)},
        "less": [list(p) for p in sorted(m.less)],
    }
    if isinstance(m, PrefModel):
        if m.logic == LOGIC_R:
            data["ranks"] = {w: r for w, r in sorted(ranks(m).items())}
        if m.tag is not None:
            data["chains"] = [list(chain) for chain in m.tag.partition]
    else:
        data["states"] = {s: sorted(m.label[s]) for s in sorted(m.states)}
    if designated is not None:
        data["designated"] = designated
    return data


__all__ = [
    "Model",
    "MultiLinearTag",
    "Pair",
    "PrefModel",
    "StateModel",
    "as_state_model",
    "model_to_dict",
    "ranks",
]
