"""Adaptive-size MDAV over paired records, plus cluster centroid selection."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .distance import PairDistance, dataset_centroid


@dataclass(frozen=True)
class ClusteringConfig:
    k: int = 5
    suppress_small: bool = True

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 2:
            raise ValueError(f"k must be an integer >= 2, got {self.k!r}")


@dataclass(frozen=True)
class Cluster:
    cluster_id: int
    members: tuple  # sorted record ids
    centroid_id: int
    seed_pair: Optional[tuple] = None
    suppressed: bool = False

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class IterationTrace:
    iteration: int
    pool_size: int
    mean_delta: float
    centroid_pair: tuple
    far_pair: tuple
    farthest_pair: Optional[tuple]  # None when the pool has a single delta value
    assignments: dict  # seed pair -> tuple of assigned pair ids, seed first

    def as_dict(self) -> dict:
        return {
            "iteration": self.iteration,
            "pool_size": self.pool_size,
            "mean_delta": self.mean_delta,
            "centroid_pair": list(self.centroid_pair),
            "far_pair": list(self.far_pair),
            "farthest_pair": list(self.farthest_pair) if self.farthest_pair else None,
            "assignments": [
                {"seed": list(seed), "pairs": [list(p) for p in assigned]}
                for seed, assigned in self.assignments.items()
            ],
        }


@dataclass
class ClusteringResult:
    clusters: list
    suppressed_records: tuple
    pair_pool_trace: list = field(default_factory=list)

    @property
    def published(self) -> list:
        return [c for c in self.clusters if not c.suppressed]


def _key(p: PairDistance) -> tuple:
    return (p.left_id, p.right_id)


def cluster_centroid(members: Iterable[int], clustered_pairs: Sequence[PairDistance]) -> int:
    """Member recurring most often in the cluster's pairs.

    Ties go to the member seen in the lowest-distance pair, then the lowest id.
    """
    members = list(members)
    if not members:
        raise ValueError("empty cluster")
    counts = dict.fromkeys(members, 0)
    best = dict.fromkeys(members, math.inf)
    for p in clustered_pairs:
        for r in (p.left_id, p.right_id):
            if r in counts:
                counts[r] += 1
                best[r] = min(best[r], p.delta)
    return min(members, key=lambda m: (-counts[m], best[m], m))


def pairs_within(members: Iterable[int], pairs: Sequence[PairDistance]) -> list:
    """Pairs whose two records both belong to ``members``."""
    ms = set(members)
    return [p for p in pairs if p.left_id in ms and p.right_id in ms]


def adaptive_mdav(pairs: Sequence[PairDistance], cfg: ClusteringConfig = ClusteringConfig()) -> ClusteringResult:
    if not pairs:
        raise ValueError("no pairs to cluster")
    if not all(math.isfinite(p.delta) for p in pairs):
        raise ValueError("non-finite pair distance")
    pool = sorted(pairs, key=_key)
    groups: list = []  # (members, seed_pair)
    trace = []
    claimed: set = set()

    while len(pool) > cfg.k:
        cen = dataset_centroid(pool)
        mu = cen.mean_delta
        far = min(pool, key=lambda p: (-abs(p.delta - mu), p.left_id, p.right_id))
        rest = [p for p in pool if p is not far]
        other = min(rest, key=lambda p: (-abs(p.delta - far.delta), p.left_id, p.right_id))
        if other.delta == far.delta:
            seeds = [far]
            farthest = None
        else:
            seeds = sorted((far, other), key=lambda p: (p.delta, p.left_id, p.right_id))
            farthest = _key(other)

        assigned = {_key(s): [s] for s in seeds}
        for p in pool:
            if any(p is s for s in seeds):
                continue
            if len(seeds) == 1 or abs(p.delta - seeds[0].delta) <= abs(p.delta - seeds[1].delta):
                assigned[_key(seeds[0])].append(p)
            else:
                assigned[_key(seeds[1])].append(p)

        for s in seeds:
            recs = {r for p in assigned[_key(s)] for r in (p.left_id, p.right_id)} - claimed
            if recs:
                groups.append((tuple(sorted(recs)), _key(s)))
                claimed |= recs

        trace.append(IterationTrace(
            iteration=len(trace) + 1,
            pool_size=len(pool),
            mean_delta=mu,
            centroid_pair=cen.centroid_pair,
            far_pair=_key(far),
            farthest_pair=farthest,
            assignments={k: tuple(_key(p) for p in v) for k, v in assigned.items()},
        ))
        pool = [p for p in pool if p.left_id not in claimed and p.right_id not in claimed]

    if pool:
        recs = {r for p in pool for r in (p.left_id, p.right_id)}
        groups.append((tuple(sorted(recs)), None))

    owner = {r: gi for gi, (members, _) in enumerate(groups) for r in members}
    inside: list = [[] for _ in groups]
    for p in pairs:
        g = owner.get(p.left_id)
        if g is not None and owner.get(p.right_id) == g:
            inside[g].append(p)

    clusters, suppressed = [], []
    for gi, (members, seed) in enumerate(groups):
        small = len(members) < cfg.k and cfg.suppress_small
        clusters.append(Cluster(gi + 1, members, cluster_centroid(members, inside[gi]), seed, small))
        if small:
            suppressed.extend(members)
    return ClusteringResult(clusters, tuple(sorted(suppressed)), trace)
