"""Tableau decision procedures for C, CL, P and R."""

from .common import TableauNode, Trace, Verdict, expand_static, is_axiom, project
from .cumulative_engine import decide_c
from .loop_cumulative_engine import decide_cl
from .preferential_engine import decide_p
from .rational_engine import LabelledNode, decide_r

__all__ = [
    "LabelledNode",
    "TableauNode",
    "Trace",
    "Verdict",
    "decide_c",
    "decide_cl",
    "decide_p",
    "decide_r",
    "expand_static",
    "is_axiom",
    "project",
]
