"""Cluster cohesion, SSE, SST and information loss."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .anonymizer import AnonymizedRecord, match_to_centroid
from .clustering import Cluster, ClusteringResult
from .distance import DatasetCentroid, PairDistance, dataset_centroid, record_distance
from .semantics import DEFAULT_THRESHOLD, PairSimilarityMatrix, similarity_grid, greedy_match
from .taxonomy import Taxonomy


class InformationLossWarning(UserWarning):
    pass


def member_distance(member, centroid, tax: Taxonomy, threshold: float) -> float:
    """Record distance of a member to its centroid; 1 when nothing matches."""
    cells = similarity_grid(member.concepts, centroid.concepts, tax)
    m = PairSimilarityMatrix(member.record_id, centroid.record_id, cells, greedy_match(cells, threshold))
    if not m.matched:
        return 1.0
    return record_distance(m).delta


def cohesion(cluster: Cluster, records: Mapping[int, tuple], tax: Taxonomy, threshold: float = DEFAULT_THRESHOLD) -> Optional[float]:
    """Root-mean member-to-centroid distance; ``None`` for a singleton."""
    if cluster.size < 2:
        return None
    cdd = records[cluster.centroid_id][1]
    ds = [
        member_distance(records[rid][1], cdd, tax, threshold)
        for rid in cluster.members
        if rid != cluster.centroid_id
    ]
    return math.sqrt(math.fsum(ds) / len(ds))


def sse_contributions(
    clusters: Sequence[Cluster],
    records: Mapping[int, tuple],
    anonymized: Mapping[int, Sequence[AnonymizedRecord]],
    tax: Taxonomy,
) -> dict:
    """Per published cluster: sum over non-centroid reps of distance(rep, target)^2 * weight."""
    out = {}
    for cl in sorted(clusters, key=lambda c: c.cluster_id):
        if cl.suppressed:
            continue
        if cl.cluster_id not in anonymized:
            raise KeyError(f"no redaction trace for cluster {cl.cluster_id}")
        terms = []
        for ar in sorted(anonymized[cl.cluster_id], key=lambda a: a.record_id):
            if ar.record_id == cl.centroid_id:
                continue
            dd = records[ar.record_id][1]
            for m, pos in enumerate(dd.rep_positions):
                d = tax.concept_distance(dd.reps[m][1], ar.trace[pos].target)
                terms.append(d * d * dd.weights[m])
        out[cl.cluster_id] = math.fsum(terms)
    return out


def sse(clusters, records, anonymized, tax) -> float:
    return math.fsum(sse_contributions(clusters, records, anonymized, tax).values())


def centroid_record(centroid: DatasetCentroid, records: Mapping[int, tuple]) -> int:
    """Member of the centroid pair with more reps; ties to the lower id."""
    a, b = centroid.centroid_pair
    return min((a, b), key=lambda r: (-len(records[r][1].reps), r))


def sst_contributions(records: Mapping[int, tuple], centroid: DatasetCentroid, tax: Taxonomy, threshold: float = DEFAULT_THRESHOLD) -> dict:
    """Per record (centroid record excluded): squared distance of each rep to its centroid-record counterpart."""
    if not records:
        raise ValueError("no records")
    c_id = centroid_record(centroid, records)
    c_dd = records[c_id][1]
    out = {}
    for rid in sorted(records):
        if rid == c_id:
            continue
        dd = records[rid][1]
        match = match_to_centroid(dd, c_dd, tax, threshold)
        terms = []
        for m, (_, cid) in enumerate(dd.reps):
            if m in match:
                d = tax.concept_distance(cid, c_dd.reps[match[m]][1])
            else:
                d = min(tax.concept_distance(cid, c) for c in c_dd.concepts)
            terms.append(d * d * dd.weights[m])
        out[rid] = math.fsum(terms)
    return out


def sst(records, centroid, tax, threshold: float = DEFAULT_THRESHOLD) -> float:
    return math.fsum(sst_contributions(records, centroid, tax, threshold).values())


def information_loss(sse_total: float, sst_total: float) -> float:
    """Percentage SSE/SST; 0 when SST is 0. Values above 100 warn but are kept."""
    if sse_total < 0 or sst_total < 0:
        raise ValueError("SSE and SST must be non-negative")
    if sst_total == 0:
        return 0.0
    il = 100.0 * sse_total / sst_total
    if il > 100.0:
        warnings.warn(f"information loss {il:.6g}% exceeds 100%", InformationLossWarning, stacklevel=2)
    return il


@dataclass(frozen=True)
class ClusterMetrics:
    cluster_id: int
    size: int
    cohesion: Optional[float]
    sse_contribution: float
    sst_contribution: float

    @property
    def il_percent(self) -> Optional[float]:
        if self.sst_contribution == 0:
            return None
        return 100.0 * self.sse_contribution / self.sst_contribution


@dataclass(frozen=True)
class MetricsReport:
    per_cluster: tuple
    sse_total: float
    sst_total: float
    il_percent: float
    dataset_centroid_record: int
    dataset_centroid: DatasetCentroid


def compute_metrics(
    clustering: ClusteringResult,
    records: Mapping[int, tuple],
    anonymized: Mapping[int, Sequence[AnonymizedRecord]],
    pairs: Sequence[PairDistance],
    tax: Taxonomy,
    threshold: float = DEFAULT_THRESHOLD,
) -> MetricsReport:
    """SST runs over every record that appears in an admitted pair."""
    cen = dataset_centroid(pairs)
    universe = {r for p in pairs for r in p.ids}
    sst_by_rec = sst_contributions({r: records[r] for r in universe}, cen, tax, threshold)
    sse_by_cl = sse_contributions(clustering.clusters, records, anonymized, tax)
    rows = []
    for cl in clustering.published:
        rows.append(ClusterMetrics(
            cl.cluster_id,
            cl.size,
            cohesion(cl, records, tax, threshold),
            sse_by_cl[cl.cluster_id],
            math.fsum(sst_by_rec.get(r, 0.0) for r in cl.members),
        ))
    sse_total = math.fsum(sse_by_cl.values())
    sst_total = math.fsum(sst_by_rec.values())
    return MetricsReport(
        tuple(rows),
        sse_total,
        sst_total,
        information_loss(sse_total, sst_total),
        centroid_record(cen, records),
        cen,
    )
