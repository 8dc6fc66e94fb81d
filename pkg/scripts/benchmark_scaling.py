"""Time each pipeline stage on synthetic logs of growing size; prints CSV."""

import argparse
import csv
import random
import sys
import time

from semagg.anonymizer import anonymize_cluster
from semagg.clustering import ClusteringConfig, adaptive_mdav
from semagg.metrics import compute_metrics
from semagg.pipeline import build_records, compute_pairs
from semagg.synth import random_records, random_taxonomy


def run_once(n, concepts, k, threads, seed):
    rng = random.Random(seed)
    tax = random_taxonomy(concepts, rng)
    qrs = random_records(tax, n, rng, mean_attrs=4)
    t = {"start": time.perf_counter()}
    recs = build_records(qrs, tax)
    t["dedup"] = time.perf_counter()
    _, pairs = compute_pairs(recs, tax, threads=threads)
    t["pairs"] = time.perf_counter()
    res = adaptive_mdav(pairs, ClusteringConfig(k=k))
    t["cluster"] = time.perf_counter()
    anon = {c.cluster_id: anonymize_cluster(c, recs, tax) for c in res.published}
    compute_metrics(res, recs, anon, pairs, tax)
    t["metrics"] = time.perf_counter()
    stages = ["start", "dedup", "pairs", "cluster", "metrics"]
    row = {"n": n, "pairs": len(pairs), "clusters": len(res.published)}
    for a, b in zip(stages, stages[1:]):
        row[f"{b}_s"] = round(t[b] - t[a], 4)
    row["total_s"] = round(t["metrics"] - t["start"], 4)
    return row


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=[250, 500, 1000, 2000])
    ap.add_argument("--concepts", type=int, default=500)
    ap.add_argument("--k", type=int, default=5)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    writer = None
    for n in args.sizes:
        row = run_once(n, args.concepts, args.k, args.threads, args.seed)
        if writer is None:
            writer = csv.DictWriter(sys.stdout, fieldnames=list(row))
            writer.writeheader()
        writer.writerow(row)
        sys.stdout.flush()


if __name__ == "__main__":
    main()
