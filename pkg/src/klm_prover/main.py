"""Command-line entrypoint for the KLM prover."""

import json
import logging
from pathlib import Path
from typing import List, Optional

import click
from pydantic import ValidationError

from .config import get_settings
from .shared.constants import (
    ENGINES,
    EXIT_ERROR,
    OUTPUT_FORMATS,
    OUTPUT_JSON,
    QUERY_MODES,
    SUPPORTED_LOGICS,
)
from .shared.errors import FormulaSyntaxError, KnowledgeBaseError
from .shared.types import QueryRequest
from .syntax.formulas import Formula
from .syntax.parser import parse_formula, parse_kb
from .tools.report_builder import format_report, format_summary_line
from .workflow.query_workflow import run, run_all_logics

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
ALL_LOGICS = "all"

settings = get_settings()


def _configure_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose else getattr(logging, settings.log_level.upper(), None)
    logging.basicConfig(level=level or logging.WARNING, format=LOG_FORMAT)


def _read_kb(path: Optional[str]) -> List[Formula]:
    if path is None:
        return []
    return list(parse_kb(Path(path).read_text(encoding="utf-8")))


def _parse_optional(text: Optional[str]) -> Optional[Formula]:
    return parse_formula(text) if text is not None else None


@click.command()
@click.option(
    "--logic",
    type=click.Choice(SUPPORTED_LOGICS + [ALL_LOGICS], case_sensitive=False),
    default=settings.default_logic,
    show_default=True,
    help="Logic to decide in, or 'all' for one line per logic.",
)
@click.option("--mode", type=click.Choice(QUERY_MODES), default="sat", show_default=True)
@click.option(
    "--kb",
    "kb_path",
    type=click.Path(exists=True, dir_okay=False),
    help="Knowledge base file, one assertion per line.",
)
@click.option("--query", help="Query formula for entails (or valid).")
@click.option("--formula", help="Inline formula for sat or valid.")
@click.option(
    "--engine",
    type=click.Choice(ENGINES),
    default=settings.default_engine,
    show_default=True,
    help="Tableau engine, the bounded oracle, or both with an agreement check.",
)
@click.option("--bound", type=click.IntRange(min=1), default=None, help="Oracle bound.")
@click.option("--output", type=click.Choice(OUTPUT_FORMATS), default="text", show_default=True)
@click.option("--trace", is_flag=True, help="Include the rule applications.")
@click.option("--verbose", is_flag=True, help="Log at DEBUG level.")
@click.pass_context
def cli(
    ctx: click.Context,
    logic: str,
    mode: str,
    kb_path: Optional[str],
    query: Optional[str],
    formula: Optional[str],
    engine: str,
    bound: Optional[int],
    output: str,
    trace: bool,
    verbose: bool,
) -> None:
    """Decide satisfiability, validity and entailment in the KLM logics C, CL, P and R."""
    _configure_logging(verbose)
    logic = logic.lower()
    try:
        request = QueryRequest(
            mode=mode,
            logic=SUPPORTED_LOGICS[0] if logic == ALL_LOGICS else logic,
            kb=_read_kb(kb_path),
            query=_parse_optional(query),
            formula=_parse_optional(formula),
            engine=engine,
            bound=bound,
            output=output,
            trace=trace,
        )
    except KnowledgeBaseError as e:
        logger.error(f"[CLI] malformed knowledge base {kb_path}")
        for err in e.errors:
            click.echo(f"{kb_path}: {err}", err=True)
        ctx.exit(EXIT_ERROR)
    except FormulaSyntaxError as e:
        logger.error(f"[CLI] malformed formula: {e}")
        click.echo(f"syntax error: {e}", err=True)
        ctx.exit(EXIT_ERROR)
    except ValidationError as e:
        messages = "; ".join(err["msg"] for err in e.errors())
        logger.error(f"[CLI] invalid query: {messages}")
        click.echo(f"invalid query: {messages}", err=True)
        ctx.exit(EXIT_ERROR)

    if logic == ALL_LOGICS:
        code, reports = run_all_logics(request)
        if output == OUTPUT_JSON:
            click.echo(
                json.dumps(
                    [r.model_dump(mode="json", exclude_none=True) for r in reports], indent=2
                )
            )
        else:
            for report in reports:
                click.echo(format_summary_line(report))
        ctx.exit(code)

    code, report = run(request)
    click.echo(format_report(report, output))
    ctx.exit(code)


if __name__ == "__main__":
    cli()
