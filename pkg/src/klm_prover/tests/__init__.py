"""Test modules for the KLM prover."""
