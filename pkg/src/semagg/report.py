"""Serialization of pipeline artifacts. Every float is written with 6 significant digits."""

from __future__ import annotations

import csv
import json
from pathlib import Path
from statistics import fmean
from typing import Iterable, Optional, TextIO

from . import __version__
from .clustering import Cluster, ClusteringResult
from .metrics import MetricsReport


def fmt(x: Optional[float]) -> str:
    return "" if x is None else format(x, ".6g")


def jnum(x: Optional[float]):
    return None if x is None else float(format(x, ".6g"))


def _dump_json(obj, path: Path) -> None:
    path.write_text(json.dumps(obj, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")


def clusters_payload(result: ClusteringResult) -> list:
    return [
        {
            "cluster_id": c.cluster_id,
            "centroid_id": c.centroid_id,
            "members": list(c.members),
            "suppressed": c.suppressed,
            "seed_pair": list(c.seed_pair) if c.seed_pair else None,
        }
        for c in result.clusters
    ]


def write_clusters_json(result: ClusteringResult, path: Path) -> None:
    _dump_json(clusters_payload(result), path)


def read_clusters_json(path: Path) -> list:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    return [
        Cluster(
            int(d["cluster_id"]),
            tuple(int(m) for m in d["members"]),
            int(d["centroid_id"]),
            tuple(d["seed_pair"]) if d.get("seed_pair") else None,
            bool(d["suppressed"]),
        )
        for d in data
    ]


def write_trace_json(result: ClusteringResult, path: Path) -> None:
    payload = []
    for t in result.pair_pool_trace:
        d = t.as_dict()
        d["mean_delta"] = jnum(d["mean_delta"])
        payload.append(d)
    _dump_json(payload, path)


def write_anonymized_tsv(anonymized: dict, path: Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        for cid in sorted(anonymized):
            for ar in sorted(anonymized[cid], key=lambda a: a.record_id):
                terms = " ".join(term for term, _ in ar.output_attributes)
                fh.write(f"{ar.record_id}\t{cid}\t{terms}\n")


def write_metrics_csv(report: MetricsReport, path: Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["cluster_id", "size", "cohesion", "sse_contribution"])
        for row in report.per_cluster:
            w.writerow([row.cluster_id, row.size, fmt(row.cohesion), fmt(row.sse_contribution)])


def write_il_by_size_csv(report: MetricsReport, path: Path) -> None:
    """Per-cluster information loss against cluster size, sorted by size."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["cluster_id", "size", "sse", "sst", "il_percent"])
        for row in sorted(report.per_cluster, key=lambda r: (r.size, r.cluster_id)):
            w.writerow([row.cluster_id, row.size, fmt(row.sse_contribution), fmt(row.sst_contribution), fmt(row.il_percent)])


def write_pairs_csv(pairs: Iterable, out: TextIO) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["left_id", "right_id", "n_left", "n_right", "n_union", "n_intersect", "sym_diff", "delta"])
    for p in pairs:
        w.writerow([p.left_id, p.right_id, p.n_left, p.n_right, p.n_union, p.n_intersect, fmt(p.sym_diff), fmt(p.delta)])


def write_records_tsv(records: Iterable, out: TextIO) -> None:
    """``record_id, user_id, ;-joined terms, space-joined concept ids``."""
    out.write("record_id\tuser_id\tterms\tconcepts\n")
    for r in records:
        user = r.source_line.user_id if r.source_line and r.source_line.user_id else ""
        terms = ";".join(t for t, _ in r.attributes)
        out.write(f"{r.record_id}\t{user}\t{terms}\t{' '.join(r.concepts)}\n")


def summary_payload(
    config: dict,
    counts: dict,
    clustering: ClusteringResult,
    report: Optional[MetricsReport],
    n_pairs: int,
) -> dict:
    sizes = [c.size for c in clustering.published]
    summary = {
        "tool": "semagg",
        "version": __version__,
        "config": config,
        "records": {
            **counts,
            "paired": len({m for c in clustering.clusters for m in c.members}),
            "suppressed": len(clustering.suppressed_records),
            "published": sum(sizes),
        },
        "pairs": n_pairs,
        "clusters": {
            "published": len(sizes),
            "suppressed": sum(1 for c in clustering.clusters if c.suppressed),
            "min_size": min(sizes) if sizes else None,
            "max_size": max(sizes) if sizes else None,
            "mean_size": jnum(fmean(sizes)) if sizes else None,
        },
        "sse": None,
        "sst": None,
        "il_percent": None,
        "dataset_centroid_record": None,
        "mean_pair_delta": None,
    }
    if report is not None:
        summary.update(
            sse=jnum(report.sse_total),
            sst=jnum(report.sst_total),
            il_percent=jnum(report.il_percent),
            dataset_centroid_record=report.dataset_centroid_record,
            mean_pair_delta=jnum(report.dataset_centroid.mean_delta),
        )
    return summary


def write_summary_json(summary: dict, path: Path) -> None:
    _dump_json(summary, path)
