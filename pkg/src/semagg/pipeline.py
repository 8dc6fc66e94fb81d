"""End-to-end composition: dedup, pairing, clustering, redaction, metrics."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .anonymizer import anonymize_cluster
from .clustering import ClusteringConfig, ClusteringResult, adaptive_mdav
from .distance import record_distance
from .ingest import QueryRecord
from .metrics import MetricsReport, compute_metrics
from .semantics import DEFAULT_THRESHOLD, dedup_record, matching_pairs
from .taxonomy import Taxonomy


class EmptyPipeline(RuntimeError):
    """No admitted records, no admitted pairs, or nothing left to publish."""


@dataclass(frozen=True)
class PipelineConfig:
    input: Optional[Path] = None
    format: str = "plain"
    taxonomy: Optional[Path] = None
    stopwords: Optional[Path] = None
    k: int = 5
    sim_threshold: float = DEFAULT_THRESHOLD
    suppress_small: bool = True
    out: Optional[Path] = None
    threads: int = 1

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 2:
            raise ValueError(f"k must be >= 2, got {self.k}")
        if not 0.0 < self.sim_threshold <= 1.0:
            raise ValueError(f"similarity threshold must be in (0, 1], got {self.sim_threshold}")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")
        if self.format not in ("plain", "aol-tsv"):
            raise ValueError(f"unknown format {self.format!r}")

    @property
    def clustering(self) -> ClusteringConfig:
        return ClusteringConfig(self.k, self.suppress_small)

    def echo(self) -> dict:
        return {
            "input": str(self.input) if self.input else None,
            "format": self.format,
            "taxonomy": str(self.taxonomy) if self.taxonomy else None,
            "stopwords": str(self.stopwords) if self.stopwords else None,
            "k": self.k,
            "sim_threshold": self.sim_threshold,
            "suppress_small": self.suppress_small,
            "threads": self.threads,
        }


@dataclass
class PipelineResult:
    records: dict  # record id -> (QueryRecord, DedupedRecord)
    matrices: list
    pairs: list
    clustering: ClusteringResult
    anonymized: dict  # cluster id -> list of AnonymizedRecord
    metrics: Optional[MetricsReport]


def build_records(query_records: Sequence[QueryRecord], tax: Taxonomy, threshold: float = DEFAULT_THRESHOLD) -> dict:
    return {r.record_id: (r, dedup_record(r, tax, threshold)) for r in query_records}


def compute_pairs(records: dict, tax: Taxonomy, threshold: float = DEFAULT_THRESHOLD, threads: int = 1) -> tuple:
    if len(records) < 2:
        return [], []
    matrices = matching_pairs([dd for _, dd in records.values()], tax, threshold, threads)
    return matrices, [record_distance(m) for m in matrices]


def anonymize_all(clustering: ClusteringResult, records: dict, tax: Taxonomy, threshold: float = DEFAULT_THRESHOLD) -> dict:
    return {c.cluster_id: anonymize_cluster(c, records, tax, threshold) for c in clustering.published}


def run_pipeline(
    query_records: Sequence[QueryRecord],
    tax: Taxonomy,
    k: int = 5,
    threshold: float = DEFAULT_THRESHOLD,
    suppress_small: bool = True,
    threads: int = 1,
) -> PipelineResult:
    if not query_records:
        raise EmptyPipeline("no admitted records")
    records = build_records(query_records, tax, threshold)
    matrices, pairs = compute_pairs(records, tax, threshold, threads)
    if not pairs:
        raise EmptyPipeline("no record pairs share a similar attribute")
    clustering = adaptive_mdav(pairs, ClusteringConfig(k, suppress_small))
    anonymized = anonymize_all(clustering, records, tax, threshold)
    report = compute_metrics(clustering, records, anonymized, pairs, tax, threshold)
    return PipelineResult(records, matrices, pairs, clustering, anonymized, report)
