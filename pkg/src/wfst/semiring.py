"""
Tropical semiring over non-negative reals.

``plus`` is min (path selection), ``times`` is addition (path extension).
"""

import math
from typing import Iterable

ZERO = math.inf
ONE = 0.0


def plus(a: float, b: float) -> float:
    return a if a <= b else b


def times(a: float, b: float) -> float:
    if a == ZERO or b == ZERO:
        return ZERO
    return a + b


def sum_weights(weights: Iterable[float]) -> float:
    """Semiring sum (min) of a collection; ZERO when empty."""
    total = ZERO
    for weight in weights:
        total = plus(total, weight)
    return total


def is_valid_weight(weight: float) -> bool:
    """Grammar weights must be finite and non-negative."""
    return math.isfinite(weight) and weight >= 0.0
