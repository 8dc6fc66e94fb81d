"""Exhaustive baselines for small instances: all k-constrained partitions and the SSE optimum."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Mapping, Optional, Sequence

from .anonymizer import anonymize_cluster
from .clustering import Cluster, cluster_centroid, pairs_within
from .distance import record_distance
from .metrics import sse_contributions
from .semantics import DEFAULT_THRESHOLD, matching_pairs
from .taxonomy import Taxonomy

MAX_RECORDS = 10


@dataclass(frozen=True)
class PartitionCandidate:
    blocks: tuple  # of sorted id tuples, ordered by first element
    sse: float


def enumerate_partitions(record_ids, k: int) -> Iterator[tuple]:
    """Yield every set partition whose blocks all hold >= k ids, in canonical order.

    Ids are sorted, then each is placed into an existing block or a new one
    (restricted growth order); branches that can no longer fill every block
    to k are cut.
    """
    ids = sorted(record_ids)
    n = len(ids)
    if n > MAX_RECORDS:
        raise ValueError(f"oracle refuses more than {MAX_RECORDS} records (got {n})")
    if k < 1:
        raise ValueError("k must be positive")
    if n == 0:
        return
    blocks: list = []

    def deficit() -> int:
        return sum(max(0, k - len(b)) for b in blocks)

    def rec(i: int):
        if deficit() > n - i:
            return
        if i == n:
            yield tuple(tuple(b) for b in blocks)
            return
        for b in blocks:
            b.append(ids[i])
            yield from rec(i + 1)
            b.pop()
        blocks.append([ids[i]])
        yield from rec(i + 1)
        blocks.pop()

    yield from rec(0)


def restricted_bell(n: int, k: int) -> int:
    """Count partitions of n items with all blocks >= k: fix the block holding item 1."""
    table = [1] + [0] * n
    for m in range(1, n + 1):
        table[m] = sum(math.comb(m - 1, s - 1) * table[m - s] for s in range(k, m + 1))
    return table[n]


class BlockScorer:
    """SSE of one block treated as a published cluster, memoized per block."""

    def __init__(self, records: Mapping[int, tuple], pairs: Sequence, tax: Taxonomy, threshold: float):
        self.records = records
        self.pairs = pairs
        self.tax = tax
        self.threshold = threshold
        self._cache: dict = {}

    def __call__(self, block: tuple) -> float:
        key = tuple(sorted(block))
        if key not in self._cache:
            centroid = cluster_centroid(key, pairs_within(key, self.pairs))
            cl = Cluster(0, key, centroid)
            anon = {0: anonymize_cluster(cl, self.records, self.tax, self.threshold)}
            self._cache[key] = sse_contributions([cl], self.records, anon, self.tax)[0]
        return self._cache[key]

    def partition_sse(self, blocks) -> float:
        return math.fsum(self(b) for b in blocks)


def admitted_pairs(records: Mapping[int, tuple], tax: Taxonomy, threshold: float) -> list:
    if len(records) < 2:
        return []
    return [record_distance(m) for m in matching_pairs([dd for _, dd in records.values()], tax, threshold)]


def optimal_sse(
    records: Mapping[int, tuple],
    tax: Taxonomy,
    threshold: float = DEFAULT_THRESHOLD,
    k: int = 2,
    pairs: Optional[Sequence] = None,
) -> tuple:
    """Minimum-SSE partition over all k-constrained partitions of ``records``.

    Returns ``(PartitionCandidate, sse)``; ties keep the earliest partition
    in canonical order.
    """
    if pairs is None:
        pairs = admitted_pairs(records, tax, threshold)
    score = BlockScorer(records, pairs, tax, threshold)
    best = None
    for blocks in enumerate_partitions(records.keys(), k):
        s = score.partition_sse(blocks)
        if best is None or s < best.sse:
            best = PartitionCandidate(blocks, s)
    if best is None:
        raise ValueError(f"no partition of {len(records)} records has all blocks >= {k}")
    return best, best.sse
