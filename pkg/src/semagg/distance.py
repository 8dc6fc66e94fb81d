"""Set-level distance between paired records and the dataset centroid pair."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .semantics import PairSimilarityMatrix


@dataclass(frozen=True)
class PairDistance:
    left_id: int
    right_id: int
    n_left: int
    n_right: int
    n_union: int
    n_intersect: int
    sym_diff: float
    delta: float

    @property
    def ids(self) -> tuple:
        return (self.left_id, self.right_id)


@dataclass(frozen=True)
class DatasetCentroid:
    mean_delta: float
    centroid_pair: tuple


def intersection_cardinality(m: PairSimilarityMatrix) -> int:
    return len(m.matched)


def symmetric_difference(n_union: int, n_intersect: int) -> float:
    """Ratio of distinct attributes to matched ones (not the set-theoretic Δ)."""
    if n_intersect <= 0:
        raise ValueError("empty semantic intersection: pair should not have been admitted")
    return n_union / n_intersect


def record_distance(m: PairSimilarityMatrix) -> PairDistance:
    n_left, n_right = m.shape
    n_int = intersection_cardinality(m)
    n_union = n_left + n_right - n_int
    sym = symmetric_difference(n_union, n_int)
    return PairDistance(m.left_id, m.right_id, n_left, n_right, n_union, n_int, sym, sym / n_union)


def dataset_centroid(pairs: Sequence[PairDistance]) -> DatasetCentroid:
    """Mean pair distance and the pair closest to it (ties: lower ids)."""
    if not pairs:
        raise ValueError("no pairs")
    mean = math.fsum(p.delta for p in pairs) / len(pairs)
    best = min(pairs, key=lambda p: (abs(p.delta - mean), p.left_id, p.right_id))
    return DatasetCentroid(mean, best.ids)
