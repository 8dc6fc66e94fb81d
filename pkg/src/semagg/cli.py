"""Command-line entry point.

Exit codes: 0 ok, 1 I/O or parse failure, 2 invalid configuration,
3 empty pipeline (nothing admitted, no pairs, or no cluster published).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__, report
from .clustering import ClusteringConfig, adaptive_mdav
from .ingest import ingest, load_stopwords
from .metrics import compute_metrics
from .pipeline import (
    EmptyPipeline,
    PipelineConfig,
    anonymize_all,
    build_records,
    compute_pairs,
)
from .taxonomy import TaxonomyError, load_taxonomy

log = logging.getLogger("semagg")

EXIT_OK, EXIT_IO, EXIT_CONFIG, EXIT_EMPTY = 0, 1, 2, 3


def _common(p: argparse.ArgumentParser, out_required: bool = False) -> None:
    p.add_argument("--input", type=Path, required=True, help="query log file")
    p.add_argument("--format", choices=("aol-tsv", "plain"), default="plain")
    p.add_argument("--taxonomy", type=Path, required=True, help="taxonomy file (E/T/C lines)")
    p.add_argument("--stopwords", type=Path, help="stopword file, one term per line (default: bundled list)")
    p.add_argument("--k", type=int, default=5, help="minimum cluster size (default: 5)")
    p.add_argument("--threshold", type=float, default=0.8, help="attribute similarity threshold (default: 0.8)")
    p.add_argument("--no-suppress-small", dest="suppress_small", action="store_false",
                   help="publish clusters smaller than k instead of suppressing them")
    p.add_argument("--out", type=Path, required=out_required, help="output directory")
    p.add_argument("--threads", type=int, default=1, help="worker threads for the pair stage")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="semagg", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"semagg {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, metavar="{run,ingest,distance,cluster,metrics}")

    _common(sub.add_parser("run", help="full pipeline"), out_required=True)
    _common(sub.add_parser("ingest", help="emit admitted records as TSV"))
    _common(sub.add_parser("distance", help="emit pair distances as CSV"))
    _common(sub.add_parser("cluster", help="stop after clustering"), out_required=True)
    p = sub.add_parser("metrics", help="recompute metrics for a prior run's clusters.json")
    _common(p, out_required=True)
    p.add_argument("--clusters", type=Path, help="clusters.json (default: OUT/clusters.json)")
    # debugging aid, deliberately absent from --help
    _common(sub.add_parser("oracle"))
    return parser


def _config(args) -> PipelineConfig:
    return PipelineConfig(
        input=args.input,
        format=args.format,
        taxonomy=args.taxonomy,
        stopwords=args.stopwords,
        k=args.k,
        sim_threshold=args.threshold,
        suppress_small=args.suppress_small,
        out=args.out,
        threads=args.threads,
    )


def _load(cfg: PipelineConfig):
    with open(cfg.taxonomy, encoding="utf-8") as fh:
        tax = load_taxonomy(fh)
    stop = None
    if cfg.stopwords:
        with open(cfg.stopwords, encoding="utf-8") as fh:
            stop = load_stopwords(fh)
    with open(cfg.input, encoding="utf-8") as fh:
        ing = ingest(fh, tax, cfg.format, stop)
    if ing.report.skipped:
        log.warning("skipped %d malformed line(s)", len(ing.report.skipped))
    return tax, ing


def _pairs(cfg, tax, ing):
    if not ing.records:
        raise EmptyPipeline("no admitted records")
    records = build_records(ing.records, tax, cfg.sim_threshold)
    _, pairs = compute_pairs(records, tax, cfg.sim_threshold, cfg.threads)
    if not pairs:
        raise EmptyPipeline("no record pairs share a similar attribute")
    return records, pairs


def _out_dir(cfg) -> Path:
    cfg.out.mkdir(parents=True, exist_ok=True)
    return cfg.out


def cmd_run(cfg: PipelineConfig) -> int:
    tax, ing = _load(cfg)
    records, pairs = _pairs(cfg, tax, ing)
    clustering = adaptive_mdav(pairs, cfg.clustering)
    anonymized = anonymize_all(clustering, records, tax, cfg.sim_threshold)
    metrics = compute_metrics(clustering, records, anonymized, pairs, tax, cfg.sim_threshold)
    out = _out_dir(cfg)
    report.write_clusters_json(clustering, out / "clusters.json")
    report.write_trace_json(clustering, out / "trace.json")
    report.write_anonymized_tsv(anonymized, out / "anonymized.tsv")
    report.write_metrics_csv(metrics, out / "metrics.csv")
    report.write_il_by_size_csv(metrics, out / "il_by_size.csv")
    summary = report.summary_payload(cfg.echo(), ing.counts, clustering, metrics, len(pairs))
    report.write_summary_json(summary, out / "summary.json")
    if not clustering.published:
        raise EmptyPipeline(f"every record suppressed (no cluster reached k={cfg.k})")
    return EXIT_OK


def cmd_ingest(cfg: PipelineConfig) -> int:
    _, ing = _load(cfg)
    if cfg.out:
        with open(_out_dir(cfg) / "records.tsv", "w", encoding="utf-8", newline="") as fh:
            report.write_records_tsv(ing.records, fh)
    else:
        report.write_records_tsv(ing.records, sys.stdout)
    if not ing.records:
        raise EmptyPipeline("no admitted records")
    return EXIT_OK


def cmd_distance(cfg: PipelineConfig) -> int:
    tax, ing = _load(cfg)
    _, pairs = _pairs(cfg, tax, ing)
    if cfg.out:
        with open(_out_dir(cfg) / "pairs.csv", "w", encoding="utf-8", newline="") as fh:
            report.write_pairs_csv(pairs, fh)
    else:
        report.write_pairs_csv(pairs, sys.stdout)
    return EXIT_OK


def cmd_cluster(cfg: PipelineConfig) -> int:
    tax, ing = _load(cfg)
    _, pairs = _pairs(cfg, tax, ing)
    clustering = adaptive_mdav(pairs, cfg.clustering)
    out = _out_dir(cfg)
    report.write_clusters_json(clustering, out / "clusters.json")
    report.write_trace_json(clustering, out / "trace.json")
    if not clustering.published:
        raise EmptyPipeline(f"every record suppressed (no cluster reached k={cfg.k})")
    return EXIT_OK


def cmd_metrics(cfg: PipelineConfig, clusters_path: Path | None) -> int:
    from .clustering import ClusteringResult

    tax, ing = _load(cfg)
    records, pairs = _pairs(cfg, tax, ing)
    clusters = report.read_clusters_json(clusters_path or cfg.out / "clusters.json")
    suppressed = tuple(sorted(m for c in clusters if c.suppressed for m in c.members))
    clustering = ClusteringResult(clusters, suppressed)
    anonymized = anonymize_all(clustering, records, tax, cfg.sim_threshold)
    metrics = compute_metrics(clustering, records, anonymized, pairs, tax, cfg.sim_threshold)
    out = _out_dir(cfg)
    report.write_metrics_csv(metrics, out / "metrics.csv")
    report.write_il_by_size_csv(metrics, out / "il_by_size.csv")
    summary = report.summary_payload(cfg.echo(), ing.counts, clustering, metrics, len(pairs))
    json.dump(summary, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return EXIT_OK


def cmd_oracle(cfg: PipelineConfig) -> int:
    from .metrics import sse
    from .oracle import optimal_sse

    tax, ing = _load(cfg)
    records, pairs = _pairs(cfg, tax, ing)
    best, value = optimal_sse(records, tax, cfg.sim_threshold, cfg.k, pairs)
    clustering = adaptive_mdav(pairs, ClusteringConfig(cfg.k, True))
    anonymized = anonymize_all(clustering, records, tax, cfg.sim_threshold)
    payload = {
        "optimal_blocks": [list(b) for b in best.blocks],
        "optimal_sse": report.jnum(value),
        "adaptive_blocks": [list(c.members) for c in clustering.published],
        "adaptive_sse": report.jnum(sse(clustering.clusters, records, anonymized, tax)),
    }
    json.dump(payload, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="semagg: %(levelname)s: %(message)s")
    logging.captureWarnings(True)
    try:
        cfg = _config(args)
    except ValueError as exc:
        print(f"semagg: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        if args.command == "run":
            return cmd_run(cfg)
        if args.command == "ingest":
            return cmd_ingest(cfg)
        if args.command == "distance":
            return cmd_distance(cfg)
        if args.command == "cluster":
            return cmd_cluster(cfg)
        if args.command == "metrics":
            return cmd_metrics(cfg, args.clusters)
        if args.command == "oracle":
            return cmd_oracle(cfg)
    except EmptyPipeline as exc:
        print(f"semagg: empty pipeline: {exc}", file=sys.stderr)
        return EXIT_EMPTY
    except (OSError, TaxonomyError, UnicodeDecodeError, json.JSONDecodeError, KeyError) as exc:
        print(f"semagg: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"semagg: {exc}", file=sys.stderr)
        return EXIT_IO
    raise AssertionError(args.command)
