"""Finite models, evaluation and the brute-force oracle."""

from .enumeration import enumerate_models
from .evaluation import cond_holds, eval_formula_at, min_worlds, validate_model
from .oracle import OracleResult, oracle_sat
from .structures import (
    Model,
    MultiLinearTag,
    PrefModel,
    StateModel,
    as_state_model,
    model_to_dict,
    ranks,
)

__all__ = [
    "Model",
    "MultiLinearTag",
    "OracleResult",
    "PrefModel",
    "StateModel",
    "as_state_model",
    "cond_holds",
    "enumerate_models",
    "eval_formula_at",
    "min_worlds",
    "model_to_dict",
    "oracle_sat",
    "ranks",
    "validate_model",
]
