"""Seeded random taxonomies and query logs for property tests and benchmarks."""

from __future__ import annotations

import random
from typing import Optional

from .ingest import QueryRecord
from .taxonomy import Taxonomy


def random_taxonomy(
    n_concepts: int,
    rng: random.Random,
    multi_parent: float = 0.1,
    deep_bias: float = 0.7,
    n_roots: int = 1,
) -> Taxonomy:
    """DAG whose parents always precede children, so it is acyclic by construction.

    With probability ``deep_bias`` a node hangs off one of the most recent
    nodes, which yields the deep branches needed for similarities near 1.
    Concept ``cN`` carries term ``wN``; every tenth concept also takes a
    second sense of the previous term.
    """
    if n_concepts < n_roots:
        raise ValueError("need at least one concept per root")
    edges = []
    for i in range(n_roots, n_concepts):
        if rng.random() < deep_bias:
            p = rng.randrange(max(0, i - 5), i)
        else:
            p = rng.randrange(i)
        edges.append((f"c{i}", f"c{p}"))
        if i > 2 and rng.random() < multi_parent:
            q = rng.randrange(i)
            if q != p:
                edges.append((f"c{i}", f"c{q}"))
    terms = [(f"w{i}", f"c{i}") for i in range(n_concepts)]
    terms += [(f"w{i - 1}", f"c{i}") for i in range(10, n_concepts, 10)]
    roots = [f"c{i}" for i in range(n_roots)]
    return Taxonomy.from_edges(edges, terms, roots)


def _children(tax: Taxonomy) -> dict:
    kids: dict = {c: [] for c in tax.concepts}
    for c, ps in tax.parent_edges.items():
        for p in ps:
            kids[p].append(c)
    for v in kids.values():
        v.sort(key=lambda s: int(s[1:]) if s[1:].isdigit() else s)
    return kids


def _subtree(kids: dict, c: str) -> list:
    seen, stack = {c}, [c]
    while stack:
        for k in kids[stack.pop()]:
            if k not in seen:
                seen.add(k)
                stack.append(k)
    return sorted(seen)


def descendants(tax: Taxonomy, c: str) -> list:
    return _subtree(_children(tax), c)


def random_records(
    tax: Taxonomy,
    n: int,
    rng: random.Random,
    mean_attrs: float = 4.0,
    n_topics: int = 8,
    topical: float = 0.8,
    start_id: int = 1,
) -> list:
    """Records whose attributes are mostly drawn from the subtree of one topic."""
    ordered = sorted(tax.concepts)
    kids = _children(tax)
    pool = [c for c in ordered if len(kids[c]) > 0] or ordered
    topics = rng.sample(pool, min(n_topics, len(pool)))
    subtrees = {t: _subtree(kids, t) for t in topics}
    out = []
    for i in range(n):
        topic = rng.choice(topics)
        size = max(1, min(12, round(rng.expovariate(1.0 / mean_attrs))))
        attrs = []
        for _ in range(size):
            c = rng.choice(subtrees[topic]) if rng.random() < topical else rng.choice(ordered)
            attrs.append((tax.canonical_term(c), c))
        out.append(QueryRecord(start_id + i, tuple(attrs)))
    return out


def render_log(records: list, rng: Optional[random.Random] = None, filler=("the", "of", "for", "and")) -> list:
    """Plain-format log lines whose extraction reproduces ``records``."""
    lines = []
    for r in records:
        words = []
        for term, _ in r.attributes:
            if rng is not None and rng.random() < 0.3:
                words.append(rng.choice(filler))
            words.append(term)
        lines.append(" ".join(words))
    return lines
