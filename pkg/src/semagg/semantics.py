"""Attribute-level semantics: intra-record dedup and inter-record similarity grids."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .ingest import QueryRecord
from .taxonomy import Taxonomy

DEFAULT_THRESHOLD = 0.8


@dataclass(frozen=True)
class DedupedRecord:
    """Representatives left after folding semantically similar attributes.

    ``weights[m]`` is the number of original attributes folded into rep ``m``;
    ``member_map[i]`` is the rep index of original attribute ``i``.
    """

    record_id: int
    reps: tuple  # of (surface_term, ConceptId)
    weights: tuple
    member_map: tuple

    @property
    def concepts(self) -> tuple:
        return tuple(c for _, c in self.reps)

    @property
    def rep_positions(self) -> tuple:
        """Original attribute index of each rep (its first member)."""
        pos = [None] * len(self.reps)
        for i, m in enumerate(self.member_map):
            if pos[m] is None:
                pos[m] = i
        return tuple(pos)


def dedup_record(rec: QueryRecord, tax: Taxonomy, threshold: float = DEFAULT_THRESHOLD) -> DedupedRecord:
    if not rec.attributes:
        raise ValueError(f"record {rec.record_id} has no attributes")
    reps: list = []
    weights: list = []
    member_map = []
    for attr in rec.attributes:
        for m, rep in enumerate(reps):
            if tax.concept_similarity(attr[1], rep[1]) >= threshold:
                weights[m] += 1
                member_map.append(m)
                break
        else:
            reps.append(attr)
            weights.append(1)
            member_map.append(len(reps) - 1)
    return DedupedRecord(rec.record_id, tuple(reps), tuple(weights), tuple(member_map))


def greedy_match(cells: Sequence[Sequence[float]], threshold: float) -> tuple:
    """One-to-one assignment of cells >= threshold, best similarity first.

    Ties go to the lower left index, then the lower right index.
    """
    hits = sorted(
        (-s, m, n)
        for m, row in enumerate(cells)
        for n, s in enumerate(row)
        if s >= threshold
    )
    used_l, used_r, matched = set(), set(), []
    for _, m, n in hits:
        if m in used_l or n in used_r:
            continue
        used_l.add(m)
        used_r.add(n)
        matched.append((m, n))
    return tuple(sorted(matched))


def similarity_grid(left: Sequence[str], right: Sequence[str], tax: Taxonomy) -> tuple:
    return tuple(tuple(tax.concept_similarity(a, b) for b in right) for a in left)


@dataclass(frozen=True)
class PairSimilarityMatrix:
    left_id: int
    right_id: int
    cells: tuple  # |reps(left)| rows x |reps(right)| columns
    matched: tuple  # (left rep index, right rep index), sorted

    @property
    def shape(self) -> tuple:
        return (len(self.cells), len(self.cells[0]) if self.cells else 0)


def pair_matrix(r1: DedupedRecord, r2: DedupedRecord, tax: Taxonomy, threshold: float = DEFAULT_THRESHOLD) -> PairSimilarityMatrix:
    """Cartesian similarity grid of two records, oriented so left_id < right_id."""
    if r1.record_id == r2.record_id:
        raise ValueError("a record cannot be paired with itself")
    if r1.record_id > r2.record_id:
        r1, r2 = r2, r1
    cells = similarity_grid(r1.concepts, r2.concepts, tax)
    return PairSimilarityMatrix(r1.record_id, r2.record_id, cells, greedy_match(cells, threshold))


def expected_matrix_count(n: int) -> int:
    if n < 2:
        raise ValueError("need at least two records")
    return n * (n - 1) // 2


class _ConceptTable:
    """Dense similarity table over the concepts a batch of records uses."""

    def __init__(self, records: Sequence[DedupedRecord], tax: Taxonomy):
        index: dict = {}
        for r in records:
            for c in r.concepts:
                index.setdefault(c, len(index))
        self.index = index
        names = list(index)
        u = len(names)
        # last row/column is padding and never clears a threshold
        table = np.full((u + 1, u + 1), -np.inf)
        for i, a in enumerate(names):
            table[i, i] = tax.concept_similarity(a, a)
            for j in range(i + 1, u):
                table[i, j] = table[j, i] = tax.concept_similarity(a, names[j])
        self.table = table
        self.pad = u
        width = max(len(r.reps) for r in records)
        rows = np.full((len(records), width), u, dtype=np.intp)
        for i, r in enumerate(records):
            rows[i, : len(r.reps)] = [index[c] for c in r.concepts]
        self.rows = rows


def matching_pairs(
    records: Sequence[DedupedRecord],
    tax: Taxonomy,
    threshold: float = DEFAULT_THRESHOLD,
    threads: int = 1,
) -> list:
    """Every unordered record pair with at least one matched cell.

    All C(n, 2) pairs are scored; each left record is screened against all
    later records in one vectorized pass before exact grids are built.
    """
    if len(records) < 2:
        raise ValueError("need at least two records")
    recs = sorted(records, key=lambda r: r.record_id)
    ids = [r.record_id for r in recs]
    if len(set(ids)) != len(ids):
        raise ValueError("duplicate record ids")
    ct = _ConceptTable(recs, tax)
    table, rows = ct.table, ct.rows

    def scan(i: int) -> list:
        left = rows[i, : len(recs[i].reps)]
        block = table[left][:, rows[i + 1:]]  # (m_i, n - i - 1, width)
        hit = (block >= threshold).any(axis=(0, 2))
        out = []
        for off in np.flatnonzero(hit):
            j = i + 1 + int(off)
            right = rows[j, : len(recs[j].reps)]
            cells = tuple(tuple(float(v) for v in table[a, right]) for a in left)
            out.append(PairSimilarityMatrix(recs[i].record_id, recs[j].record_id, cells, greedy_match(cells, threshold)))
        return out

    idx = range(len(recs) - 1)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(scan, idx))
    else:
        chunks = [scan(i) for i in idx]
    result = [m for chunk in chunks for m in chunk]
    result.sort(key=lambda m: (m.left_id, m.right_id))
    return result
