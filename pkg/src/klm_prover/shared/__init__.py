"""Shared constants, types, errors and helpers for the KLM prover."""
