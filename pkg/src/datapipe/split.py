"""
Deterministic dataset splits.
"""

import math
from fractions import Fraction
from typing import List, Sequence, Tuple, TypeVar

import numpy as np

T = TypeVar("T")

VALIDATION_FRACTION = 0.10
VALIDATION_CAP = 50_000


def validation_size(n: int, fraction: float = VALIDATION_FRACTION, cap: int = VALIDATION_CAP) -> int:
    """min(ceil(fraction * n), cap), computed exactly."""
    if n <= 0:
        return 0
    return min(math.ceil(Fraction(str(fraction)) * n), cap, n)


def _permutation(n: int, seed: int) -> np.ndarray:
    return np.random.default_rng(seed).permutation(n)


def split_dataset(
    records: Sequence[T],
    seed: int,
    fraction: float = VALIDATION_FRACTION,
    cap: int = VALIDATION_CAP,
) -> Tuple[List[T], List[T]]:
    """(train, validation); both keep the input order of their members."""
    records = list(records)
    n = len(records)
    k = validation_size(n, fraction, cap)
    order = _permutation(n, seed)
    chosen = np.zeros(n, dtype=bool)
    chosen[order[:k]] = True
    train = [record for record, flag in zip(records, chosen) if not flag]
    validation = [record for record, flag in zip(records, chosen) if flag]
    return train, validation


def split_three_way(
    records: Sequence[T],
    seed: int,
    fractions: Tuple[float, float, float] = (0.90, 0.07, 0.03),
) -> Tuple[List[T], List[T], List[T]]:
    """(train, dev, test) for conversational sets; train takes the remainder."""
    if any(f < 0 for f in fractions) or sum(Fraction(str(f)) for f in fractions) != 1:
        raise ValueError(f"split fractions must be non-negative and sum to 1, got {fractions}")
    records = list(records)
    n = len(records)
    n_dev = math.floor(Fraction(str(fractions[1])) * n)
    n_test = math.floor(Fraction(str(fractions[2])) * n)
    order = _permutation(n, seed)
    label = np.zeros(n, dtype=np.int8)
    label[order[:n_dev]] = 1
    label[order[n_dev : n_dev + n_test]] = 2
    parts: Tuple[List[T], List[T], List[T]] = ([], [], [])
    for record, which in zip(records, label):
        parts[int(which)].append(record)
    return parts
