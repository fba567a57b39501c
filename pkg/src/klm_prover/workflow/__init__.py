"""Query orchestration for the KLM prover."""
