"""Query-log parsing and vocabulary-match attribute extraction."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable, Optional, TextIO

from .taxonomy import ConceptId, Taxonomy

FORMATS = ("aol-tsv", "plain")
MAX_NGRAM = 3

_SPLIT_RE = re.compile(r"[^a-z0-9]+")


@dataclass(frozen=True)
class RawLogLine:
    record_id: int
    text: str
    user_id: Optional[str] = None


@dataclass(frozen=True)
class QueryRecord:
    record_id: int
    attributes: tuple  # of (surface_term, ConceptId)
    source_line: Optional[RawLogLine] = None

    @property
    def concepts(self) -> tuple:
        return tuple(c for _, c in self.attributes)


@dataclass
class ParseReport:
    data_lines: int = 0
    skipped: list = field(default_factory=list)  # 1-based file line numbers


def parse_log(stream: TextIO | Iterable[str], fmt: str = "plain", report: ParseReport | None = None) -> list:
    """Read raw log lines.

    ``record_id`` is the 1-based index among non-blank data lines, so a
    skipped aol-tsv line still consumes its id.
    """
    if fmt not in FORMATS:
        raise ValueError(f"unknown log format {fmt!r}")
    report = report if report is not None else ParseReport()
    out = []
    header_seen = fmt != "aol-tsv"
    for lineno, raw in enumerate(stream, start=1):
        line = raw.rstrip("\r\n")
        if not line.strip():
            continue
        if not header_seen:
            header_seen = True
            continue
        report.data_lines += 1
        rid = report.data_lines
        if fmt == "plain":
            out.append(RawLogLine(rid, line.strip()))
            continue
        cols = line.split("\t")
        if len(cols) < 2:
            report.skipped.append(lineno)
            continue
        out.append(RawLogLine(rid, cols[1].strip(), user_id=cols[0].strip()))
    return out


def load_stopwords(stream: TextIO | Iterable[str] | None = None) -> frozenset:
    """One term per line; ``None`` loads the bundled English list."""
    if stream is None:
        text = resources.files("semagg").joinpath("data/stopwords.txt").read_text(encoding="utf-8")
        stream = text.splitlines()
    words = set()
    for line in stream:
        w = line.strip().lower()
        if w and not w.startswith("#"):
            words.add(w)
    return frozenset(words)


def tokenize(text: str) -> list:
    return [t for t in _SPLIT_RE.split(text.lower()) if t]


def extract_attributes(raw: RawLogLine, tax: Taxonomy, stopwords: frozenset = frozenset()) -> Optional[QueryRecord]:
    """Greedy longest-match (n <= 3) of stopword-filtered tokens against the term index."""
    tokens = [t for t in tokenize(raw.text) if t not in stopwords]
    attrs = []
    i = 0
    while i < len(tokens):
        for n in range(min(MAX_NGRAM, len(tokens) - i), 0, -1):
            key = " ".join(tokens[i:i + n])
            senses = tax.term_index.get(key)
            if senses:
                attrs.append((tax.surface(key), senses[0]))
                i += n
                break
        else:
            i += 1
    if not attrs:
        return None
    return QueryRecord(raw.record_id, tuple(attrs), raw)


@dataclass
class IngestResult:
    records: list  # admitted QueryRecords, record_id order
    excluded: list  # record ids with no taxonomy match
    report: ParseReport

    @property
    def counts(self) -> dict:
        return {
            "data_lines": self.report.data_lines,
            "skipped": len(self.report.skipped),
            "admitted": len(self.records),
            "excluded": len(self.excluded),
        }


def ingest(stream, tax: Taxonomy, fmt: str = "plain", stopwords: frozenset | None = None) -> IngestResult:
    if stopwords is None:
        stopwords = load_stopwords()
    report = ParseReport()
    records, excluded = [], []
    for raw in parse_log(stream, fmt, report):
        rec = extract_attributes(raw, tax, stopwords)
        if rec is None:
            excluded.append(raw.record_id)
        else:
            records.append(rec)
    return IngestResult(records, excluded, report)


def record_from_terms(record_id: int, terms: Iterable[str], tax: Taxonomy) -> QueryRecord:
    """Build a record straight from known terms; handy for fixtures and scripts."""
    attrs = []
    for t in terms:
        cid: Optional[ConceptId] = tax.resolve_term(t)
        if cid is None:
            raise KeyError(f"term {t!r} not in taxonomy")
        attrs.append((tax.surface(t), cid))
    return QueryRecord(record_id, tuple(attrs))
