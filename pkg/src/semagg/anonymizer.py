"""Redaction of cluster members against the cluster's centroid record."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping

from .clustering import Cluster
from .ingest import QueryRecord
from .semantics import DEFAULT_THRESHOLD, DedupedRecord, greedy_match, similarity_grid
from .taxonomy import ConceptId, Taxonomy


class Action(str, enum.Enum):
    KEPT_CENTROID = "kept-centroid"
    REPLACED = "replaced-by-centroid-attribute"
    GENERALIZED = "generalized"


@dataclass(frozen=True)
class RedactionStep:
    index: int  # position in the original attribute list
    action: Action
    target: ConceptId
    target_term: str


@dataclass(frozen=True)
class AnonymizedRecord:
    record_id: int
    cluster_id: int
    output_attributes: tuple  # of (surface_term, ConceptId)
    trace: tuple  # one RedactionStep per output position


def match_to_centroid(member: DedupedRecord, centroid: DedupedRecord, tax: Taxonomy, threshold: float) -> dict:
    """Member rep index -> centroid rep index, one-to-one, member as the left side."""
    cells = similarity_grid(member.concepts, centroid.concepts, tax)
    return dict(greedy_match(cells, threshold))


def replay(original: QueryRecord, trace) -> tuple:
    out = []
    for step in trace:
        if step.action is Action.KEPT_CENTROID:
            out.append(original.attributes[step.index])
        else:
            out.append((step.target_term, step.target))
    return tuple(out)


def anonymize_cluster(
    cluster: Cluster,
    records: Mapping[int, tuple],
    tax: Taxonomy,
    threshold: float = DEFAULT_THRESHOLD,
) -> list:
    """Rewrite every member of a published cluster, position by position.

    ``records`` maps record id to ``(QueryRecord, DedupedRecord)``. Output is
    in record id order.
    """
    if cluster.suppressed:
        return []
    if cluster.centroid_id not in records:
        raise KeyError(f"centroid record {cluster.centroid_id} missing")
    c_rec, c_dd = records[cluster.centroid_id]
    out = []
    for rid in sorted(cluster.members):
        rec, dd = records[rid]
        if rid == cluster.centroid_id:
            steps = tuple(
                RedactionStep(i, Action.KEPT_CENTROID, cid, term)
                for i, (term, cid) in enumerate(rec.attributes)
            )
        else:
            match = match_to_centroid(dd, c_dd, tax, threshold)
            per_rep = []
            for m, (_, cid) in enumerate(dd.reps):
                if m in match:
                    term, target = c_dd.reps[match[m]]
                    per_rep.append((Action.REPLACED, target, term))
                else:
                    g = tax.generalization_node(cid)
                    per_rep.append((Action.GENERALIZED, g, tax.canonical_term(g)))
            steps = tuple(RedactionStep(i, *per_rep[m]) for i, m in enumerate(dd.member_map))
        out.append(AnonymizedRecord(rid, cluster.cluster_id, replay(rec, steps), steps))
    return out
