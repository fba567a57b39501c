"""Utility functions for the KLM prover."""

import time
from datetime import datetime, timezone
from typing import Iterable, Tuple, TypeVar

T = TypeVar("T")


def get_iso_datetime() -> str:
    """Get current datetime in ISO format.

    Returns:
        ISO formatted datetime string
    """
    return datetime.now(timezone.utc).isoformat().replace("+00:00", "Z")


def transitive_closure(pairs: Iterable[Tuple[T, T]]) -> frozenset:
    """Transitive closure of a finite binary relation.

    Args:
        pairs: Pairs (x, y) of the relation

    Returns:
        Smallest transitive relation containing ``pairs``
    """
    closure = set(pairs)
    while True:
        extra = {
            (x, w)
            for (x, y) in closure
            for (z, w) in closure
            if y == z and (x, w) not in closure
        }
        if not extra:
            return frozenset(closure)
        closure |= extra


def millis_since(start: float) -> int:
    """Milliseconds elapsed since a ``time.perf_counter()`` reading."""
    return int((time.perf_counter() - start) * 1000)
