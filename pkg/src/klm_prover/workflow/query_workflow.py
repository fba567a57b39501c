"""Query Workflow - runs satisfiability, validity and entailment queries.

Every mode reduces to one satisfiability check: ``sat`` checks the knowledge
base together with the inline formula, ``valid`` checks the negated formula
and ``entails`` checks the knowledge base with the negated query. The chosen
engine (a tableau procedure, the oracle or both) decides that set.
"""

import logging
from typing import Callable, Dict, List, Optional, Tuple

from ..config import get_settings
from ..engines import Trace, Verdict, decide_c, decide_cl, decide_p, decide_r
from ..models.evaluation import satisfies_all, validate_model
from ..models.oracle import OracleResult, oracle_sat
from ..shared.constants import (
    ENGINE_BOTH,
    ENGINE_DEFAULT,
    ENGINE_NAIVE,
    ENGINE_ORACLE,
    EXIT_ERROR,
    EXIT_INCONCLUSIVE,
    EXIT_NEGATIVE,
    EXIT_POSITIVE,
    LOGIC_C,
    LOGIC_CL,
    LOGIC_P,
    LOGIC_R,
    MODE_SAT,
    STATUS_ERROR,
    STATUS_NO_MODEL,
    STATUS_SAT,
    STATUS_UNSAT,
    LOGIC_STRENGTH_ORDER,
)
from ..shared.errors import KLMError, LanguageError
from ..shared.types import QueryReport, QueryRequest
from ..syntax.formulas import Formula, negate
from ..tools.report_builder import build_query_report

logger = logging.getLogger(__name__)


def _decide_p(gamma, engine, trace) -> Verdict:
    return decide_p(gamma, engine=engine, trace=trace)


def _decide_r(gamma, engine, trace) -> Verdict:
    return decide_r(gamma, engine=engine, trace=trace)


def _decide_cl(gamma, engine, trace) -> Verdict:
    return decide_cl(gamma, trace=trace)


def _decide_c(gamma, engine, trace) -> Verdict:
    return decide_c(gamma, trace=trace)


DECIDERS: Dict[str, Callable[[List[Formula], str, Optional[Trace]], Verdict]] = {
    LOGIC_C: _decide_c,
    LOGIC_CL: _decide_cl,
    LOGIC_P: _decide_p,
    LOGIC_R: _decide_r,
}

# Logics offering the naive engine next to the default one
NAIVE_LOGICS = [LOGIC_P, LOGIC_R]


def checked_set(request: QueryRequest) -> List[Formula]:
    """The set whose satisfiability answers the query."""
    if request.mode == MODE_SAT:
        return list(request.kb) + ([request.formula] if request.formula is not None else [])
    if request.query is not None:
        return list(request.kb) + [negate(request.query)]
    return [negate(request.formula)]


def exit_code_for(mode: str, status: str, definitive: bool = True) -> int:
    """0 for a positive answer (SAT, valid, entailed), 1 for a negative one."""
    if status == STATUS_NO_MODEL and not definitive:
        return EXIT_INCONCLUSIVE
    sat = status == STATUS_SAT
    positive = sat if mode == MODE_SAT else not sat
    return EXIT_POSITIVE if positive else EXIT_NEGATIVE


def oracle_bound_for(logic: str, bound: Optional[int]) -> Optional[int]:
    """Requested bound, else the configured one (None lets R use the formula size)."""
    if bound is not None:
        return bound
    settings = get_settings()
    return settings.oracle_bound_r if logic == LOGIC_R else settings.oracle_bound


def tableau_verdict(
    gamma: List[Formula], logic: str, engine: str, trace: Optional[Trace]
) -> Verdict:
    """Run the tableau procedure of ``logic``.

    Raises:
        ValueError: The naive engine was asked for a logic without one
    """
    if engine == ENGINE_NAIVE and logic not in NAIVE_LOGICS:
        raise ValueError(f"engine naive is not available for logic {logic}")
    return DECIDERS[logic](gamma, engine, trace)


def self_check(verdict: Verdict, gamma: List[Formula]) -> Optional[bool]:
    """Whether an extracted model is well formed and satisfies ``gamma`` at its point."""
    if verdict.model is None or verdict.designated is None:
        return None
    if validate_model(verdict.model, verdict.logic):
        return False
    return satisfies_all(verdict.model, verdict.designated, gamma)


def oracle_status(result: OracleResult) -> str:
    if result.is_sat:
        return STATUS_SAT
    return STATUS_UNSAT if result.definitive else STATUS_NO_MODEL


def agreement_of(verdict: Verdict, result: OracleResult) -> Tuple[bool, bool]:
    """Agreement between a tableau verdict and the oracle.

    Returns:
        (agree, conclusive): a tableau SAT the oracle cannot confirm within
        its bound counts as a disagreement that is not conclusive
    """
    if result.is_sat or result.definitive:
        return verdict.is_sat == result.is_sat, True
    return not verdict.is_sat, False


def _error_report(request: QueryRequest, message: str, violations=None) -> QueryReport:
    return build_query_report(
        status=STATUS_ERROR,
        logic=request.logic,
        mode=request.mode,
        engine=request.engine,
        exit_code=EXIT_ERROR,
        error=message,
        violations=violations,
    )


def _run(request: QueryRequest) -> QueryReport:
    gamma = checked_set(request)
    logger.info(
        f"[WORKFLOW] {request.mode} query in {request.logic} with engine {request.engine}: "
        f"{len(gamma)} formula(s)"
    )
    trace = Trace() if request.trace or get_settings().record_traces else None

    if request.engine == ENGINE_ORACLE:
        result = oracle_sat(gamma, request.logic, oracle_bound_for(request.logic, request.bound))
        status = oracle_status(result)
        return build_query_report(
            status=status,
            logic=request.logic,
            mode=request.mode,
            engine=request.engine,
            exit_code=exit_code_for(request.mode, status, definitive=status != STATUS_NO_MODEL),
            model=result.model,
            designated=result.designated,
            oracle=result,
            stats={"nodes": result.inspected, "labels": 0, "millis": 0},
        )

    engine = ENGINE_DEFAULT if request.engine == ENGINE_BOTH else request.engine
    verdict = tableau_verdict(gamma, request.logic, engine, trace)
    exit_code = exit_code_for(request.mode, verdict.status)
    result = None
    agreement = None
    error = None
    if request.engine == ENGINE_BOTH:
        result = oracle_sat(gamma, request.logic, oracle_bound_for(request.logic, request.bound))
        agreement, conclusive = agreement_of(verdict, result)
        if not agreement:
            logger.warning(
                f"[WORKFLOW] tableau says {verdict.status}, oracle says {result.status} "
                f"in {request.logic} (bound {result.bound})"
            )
            if conclusive:
                exit_code = EXIT_ERROR
                error = "tableau and oracle disagree"

    return build_query_report(
        status=verdict.status,
        logic=request.logic,
        mode=request.mode,
        engine=request.engine,
        exit_code=exit_code,
        model=verdict.model,
        designated=verdict.designated,
        model_checked=self_check(verdict, gamma),
        trace=trace.to_dict() if trace is not None else None,
        oracle=result,
        agreement=agreement,
        stats=verdict.stats,
        error=error,
    )


def run(request: QueryRequest) -> Tuple[int, QueryReport]:
    """Answer one query.

    Args:
        request: Validated query

    Returns:
        Exit code (0 positive, 1 negative, 2 error, 3 oracle inconclusive)
        and the report
    """
    try:
        report = _run(request)
    except LanguageError as e:
        logger.error(f"[WORKFLOW] formula outside the language of {request.logic}: {e}")
        report = _error_report(request, "formula outside the language", e.violations)
    except (KLMError, ValueError) as e:
        logger.error(f"[WORKFLOW] query failed: {e}")
        report = _error_report(request, str(e))
    except Exception as e:
        logger.error(f"[WORKFLOW] unexpected failure: {e}", exc_info=True)
        report = _error_report(request, f"internal error: {e}")
    logger.info(f"[WORKFLOW] {request.logic} answered {report.answer or report.status}")
    return report.exit_code, report


def run_all_logics(request: QueryRequest) -> Tuple[int, List[QueryReport]]:
    """Answer the query in every logic, weakest first.

    Returns:
        2 if any logic failed, else 0, and one report per logic
    """
    reports = []
    for logic in LOGIC_STRENGTH_ORDER:
        engine = request.engine
        if engine == ENGINE_NAIVE and logic not in NAIVE_LOGICS:
            engine = ENGINE_DEFAULT
        _, report = run(request.model_copy(update={"logic": logic, "engine": engine}))
        reports.append(report)
    failed = any(r.exit_code == EXIT_ERROR for r in reports)
    return (EXIT_ERROR if failed else EXIT_POSITIVE), reports
