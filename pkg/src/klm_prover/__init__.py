"""KLM Prover - tableau decision procedures for the nonmonotonic logics C, CL, P and R."""

__version__ = "0.1.0"
