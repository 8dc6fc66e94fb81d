"""Shared fixtures-as-functions for the test modules."""

import random

from semagg.ingest import record_from_terms
from semagg.semantics import dedup_record
from semagg.synth import random_records, random_taxonomy
from semagg.taxonomy import Taxonomy

# Worked similarity grids, one row per rep of the 4-rep record.
GRID_A = [  # rows a12..a42 (q2), columns a11, a41, a51 (q1)
    [0.8, 0.4, 0.3],
    [0.2, 0.7, 0.6],
    [0.6, 0.1, 0.5],
    [0.1, 0.8, 0.6],
]
GRID_B = [  # rows a13..a43 (q3), columns a11, a41, a51 (q1)
    [0.3, 0.2, 0.3],
    [0.1, 0.8, 0.4],
    [0.6, 0.2, 0.6],
    [0.9, 0.4, 0.1],
]


def transpose(g):
    return [list(r) for r in zip(*g)]


def build(tax: Taxonomy, terms_by_id: dict, threshold: float = 0.8) -> dict:
    """``{id: [terms]}`` -> ``{id: (QueryRecord, DedupedRecord)}``."""
    out = {}
    for rid, terms in terms_by_id.items():
        rec = record_from_terms(rid, terms, tax)
        out[rid] = (rec, dedup_record(rec, tax, threshold))
    return out


def random_records_map(seed: int, n: int, n_concepts: int = 40, mean_attrs: int = 3, n_topics: int = 3):
    """Seeded taxonomy plus ``{id: (QueryRecord, DedupedRecord)}``."""
    rng = random.Random(seed)
    tax = random_taxonomy(n_concepts, rng, multi_parent=0.2)
    qrs = random_records(tax, n, rng, mean_attrs=mean_attrs, n_topics=n_topics)
    return tax, {r.record_id: (r, dedup_record(r, tax)) for r in qrs}


def random_dataset(seed: int, n: int, n_concepts: int = 40):
    tax, recs = random_records_map(seed, n, n_concepts)
    return tax, [dd for _, dd in recs.values()]
