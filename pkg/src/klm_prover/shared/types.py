"""Type definitions for queries and reports."""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..syntax.formulas import And, Atom, BoxNeg, Cond, Implies, LMod, Neg, Or
from .constants import (
    ENGINE_DEFAULT,
    ENGINES,
    MODE_ENTAILS,
    MODE_SAT,
    MODE_VALID,
    OUTPUT_FORMATS,
    OUTPUT_TEXT,
    QUERY_MODES,
    SUPPORTED_LOGICS,
)


FORMULA_TYPES = (Atom, Neg, And, Or, Implies, Cond, BoxNeg, LMod)


def _require_formula(v: Any) -> None:
    if not isinstance(v, FORMULA_TYPES):
        raise ValueError(f"not a formula: {v!r}")


class QueryRequest(BaseModel):
    """A satisfiability, validity or entailment query."""

    model_config = ConfigDict(frozen=True)

    mode: str = Field(default=MODE_SAT, description="sat, valid or entails")
    logic: str = Field(..., description="Logic to decide in (c, cl, p, r)")
    kb: List[Any] = Field(default_factory=list, description="Knowledge base assertions")
    query: Optional[Any] = Field(None, description="Query of an entailment")
    formula: Optional[Any] = Field(None, description="Inline formula")
    engine: str = Field(default=ENGINE_DEFAULT, description="default, naive, oracle or both")
    bound: Optional[int] = Field(None, description="Oracle bound; logic default when unset")
    output: str = Field(default=OUTPUT_TEXT, description="text or json")
    trace: bool = Field(default=False, description="Collect the rule applications")

    @field_validator("kb")
    @classmethod
    def check_kb(cls, v: List[Any]) -> List[Any]:
        for f in v:
            _require_formula(f)
        return v

    @field_validator("query", "formula")
    @classmethod
    def check_formula(cls, v: Any) -> Any:
        if v is not None:
            _require_formula(v)
        return v

    @model_validator(mode="after")
    def check_query(self) -> "QueryRequest":
        if self.mode not in QUERY_MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.logic not in SUPPORTED_LOGICS:
            raise ValueError(f"unknown logic {self.logic!r}")
        if self.engine not in ENGINES:
            raise ValueError(f"unknown engine {self.engine!r}")
        if self.output not in OUTPUT_FORMATS:
            raise ValueError(f"unknown output format {self.output!r}")
        if self.bound is not None and self.bound < 1:
            raise ValueError("oracle bound must be at least 1")
        if self.mode == MODE_ENTAILS and self.query is None:
            raise ValueError("entails requires a query")
        if self.mode == MODE_VALID and self.formula is None and self.query is None:
            raise ValueError("valid requires a formula")
        if self.mode == MODE_SAT and not self.kb and self.formula is None:
            raise ValueError("sat requires a knowledge base or a formula")
        return self


class OracleReport(BaseModel):
    """Oracle evidence attached to a report."""

    status: str
    bound: int
    definitive: bool = False
    inspected: int = 0
    model: Optional[Dict[str, Any]] = None


class QueryReport(BaseModel):
    """Outcome of one query, ready for text or JSON rendering."""

    status: str = Field(..., description="SAT, UNSAT, NO_MODEL_WITHIN_BOUND or ERROR")
    answer: Optional[str] = Field(None, description="Verdict phrased for the query mode")
    logic: str
    mode: str
    engine: str
    exit_code: int
    model: Optional[Dict[str, Any]] = None
    model_checked: Optional[bool] = Field(
        None, description="The model satisfies the refuted set at its designated point"
    )
    trace: Optional[Dict[str, Any]] = None
    oracle: Optional[OracleReport] = None
    agreement: Optional[bool] = None
    stats: Dict[str, int] = Field(default_factory=lambda: {"nodes": 0, "labels": 0, "millis": 0})
    error: Optional[str] = None
    violations: List[str] = Field(default_factory=list)
    meta: Dict[str, Any] = Field(default_factory=dict)
