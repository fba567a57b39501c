"""Report Builder Tool - Assembles query reports and renders models for output."""

import json
import logging
from typing import Any, Dict, List, Optional

from ..config import get_settings
from ..models.oracle import OracleResult
from ..models.structures import Model, model_to_dict
from ..shared.constants import (
    MODE_ENTAILS,
    MODE_SAT,
    MODE_VALID,
    OUTPUT_JSON,
    OUTPUT_TEXT,
    REPORT_VERSION,
    STATUS_SAT,
    STATUS_UNSAT,
)
from ..shared.types import OracleReport, QueryReport
from ..shared.utils import get_iso_datetime

logger = logging.getLogger(__name__)

# Answer wording per query mode: (answer when the checked set is SAT, when UNSAT)
ANSWERS = {
    MODE_SAT: ("SAT", "UNSAT"),
    MODE_VALID: ("NOT_VALID", "VALID"),
    MODE_ENTAILS: ("NOT_ENTAILED", "ENTAILED"),
}


def answer_for(mode: str, status: str) -> Optional[str]:
    """Phrase a SAT/UNSAT status of the checked set as the answer to the query."""
    if status == STATUS_SAT:
        return ANSWERS[mode][0]
    if status == STATUS_UNSAT:
        return ANSWERS[mode][1]
    return None


def build_oracle_report(result: OracleResult) -> OracleReport:
    return OracleReport(
        status=result.status,
        bound=result.bound,
        definitive=result.definitive,
        inspected=result.inspected,
        model=model_to_dict(result.model, result.designated) if result.model is not None else None,
    )


def build_query_report(
    *,
    status: str,
    logic: str,
    mode: str,
    engine: str,
    exit_code: int,
    model: Optional[Model] = None,
    designated: Optional[str] = None,
    model_checked: Optional[bool] = None,
    trace: Optional[Dict[str, Any]] = None,
    oracle: Optional[OracleResult] = None,
    agreement: Optional[bool] = None,
    stats: Optional[Dict[str, int]] = None,
    error: Optional[str] = None,
    violations: Optional[List[str]] = None,
) -> QueryReport:
    """Assemble the report of one query.

    Args:
        status: SAT, UNSAT, NO_MODEL_WITHIN_BOUND or ERROR for the checked set
        logic: Logic the query was decided in
        mode: Query mode
        engine: Engine that produced the verdict
        exit_code: Process exit code for this answer
        model: Countermodel or oracle model, if any
        designated: Evaluation point of ``model``
        oracle: Oracle evidence when the oracle ran next to a tableau engine

    Returns:
        QueryReport with meta information; the timestamp and ``millis`` are
        only filled in when report timings are enabled
    """
    logger.debug(f"[REPORT_BUILDER] Assembling {mode} report for {logic}: {status}")
    report = QueryReport(
        status=status,
        answer=answer_for(mode, status),
        logic=logic,
        mode=mode,
        engine=engine,
        exit_code=exit_code,
        model=model_to_dict(model, designated) if model is not None else None,
        model_checked=model_checked,
        trace=trace,
        oracle=build_oracle_report(oracle) if oracle is not None else None,
        agreement=agreement,
        error=error,
        violations=violations or [],
        meta={"version": REPORT_VERSION},
    )
    if stats is not None:
        report.stats = dict(stats)
    if get_settings().report_timings:
        report.meta["generated_at"] = get_iso_datetime()
    else:
        report.stats["millis"] = 0
    return report


# -----------------------------------------------------
# Rendering
# -----------------------------------------------------


def _valuation_text(atoms: List[str]) -> str:
    return ", ".join(atoms) if atoms else "(none)"


def _model_lines(data: Dict[str, Any]) -> List[str]:
    lines = [f"{data['kind']} model ({data['logic']})"]
    lines.append("  worlds:")
    for w, atoms in data["worlds"].items():
        rank = f"  [rank {data['ranks'][w]}]" if "ranks" in data else ""
        lines.append(f"    {w}: {_valuation_text(atoms)}{rank}")
    if "states" in data:
        lines.append("  states:")
        for s, worlds in data["states"].items():
            lines.append(f"    {s}: {{{', '.join(worlds)}}}")
    less = ", ".join(f"{a} < {b}" for a, b in data["less"])
    lines.append(f"  less: {less or '(empty)'}")
    if "chains" in data:
        lines.append("  chains: " + " | ".join(" < ".join(c) for c in data["chains"]))
    if "designated" in data:
        lines.append(f"  designated: {data['designated']}")
    return lines


def format_model(model: Model, fmt: str = OUTPUT_TEXT, designated: Optional[str] = None) -> str:
    """Render a model deterministically.

    Args:
        model: Validated model
        fmt: ``text`` or ``json``
        designated: Evaluation point to mention

    Returns:
        Rendering with worlds, states and pairs in sorted order
    """
    data = model_to_dict(model, designated)
    if fmt == OUTPUT_JSON:
        return json.dumps(data, sort_keys=True, indent=2)
    if fmt != OUTPUT_TEXT:
        raise ValueError(f"unknown output format {fmt!r}")
    return "\n".join(_model_lines(data))


def format_report(report: QueryReport, fmt: str = OUTPUT_TEXT) -> str:
    """Render a query report as JSON or as a short text block."""
    if fmt == OUTPUT_JSON:
        return report.model_dump_json(indent=2, exclude_none=True)
    if report.error is not None:
        lines = [f"[{report.logic}] ERROR: {report.error}"]
        lines += [f"  {v}" for v in report.violations]
        return "\n".join(lines)
    head = f"[{report.logic}] {report.answer or report.status} ({report.engine})"
    if report.agreement is not None:
        head += " oracle agrees" if report.agreement else " ORACLE DISAGREES"
    lines = [head]
    if report.model is not None:
        lines += _model_lines(report.model)
    elif report.oracle is not None and report.oracle.model is not None:
        lines += _model_lines(report.oracle.model)
    if report.trace is not None:
        lines.append(f"  trace: {len(report.trace['steps'])} rule applications")
        for step in report.trace["steps"]:
            targets = ", ".join(str(i) for i in step["conclusions"]) or "-"
            principal = f" on {step['principal']}" if step["principal"] else ""
            lines.append(f"    {step['premise']} --{step['rule']}{principal}--> {targets}")
    return "\n".join(lines)


def format_summary_line(report: QueryReport) -> str:
    """One line per logic, used when a query is run in every logic."""
    verdict = report.answer or report.status
    if report.error is not None:
        verdict = f"ERROR ({report.error})"
    return f"{report.logic:>2}: {verdict}"
