"""Report assembly and rendering for the KLM prover."""
