"""Concept taxonomy: loading, ancestor sets and the ancestor-ratio semantic distance.

File format (UTF-8, one record per line, ``#`` starts a comment)::

    E<TAB>child_id<TAB>parent_id
    T<TAB>surface term<TAB>concept_id
    C<TAB>concept_id

``E`` lines declare both endpoints; a child's first ``E`` line names its
primary parent. ``T`` lines map a surface term to a concept; repeating a
term lists further senses in file order. ``C`` declares an isolated concept.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from graphlib import CycleError, TopologicalSorter
from typing import Iterable, Optional, TextIO

ConceptId = str

_CONCEPT_RE = re.compile(r"^[A-Za-z0-9_.-]+$")
_TOKEN_SPLIT_RE = re.compile(r"[^a-z0-9]+")


class TaxonomyError(ValueError):
    """Raised for malformed, cyclic or inconsistent taxonomies."""


def normalize_term(text: str) -> str:
    """Lowercase and collapse non-alphanumeric runs to single spaces."""
    return " ".join(t for t in _TOKEN_SPLIT_RE.split(text.lower()) if t)


@dataclass(frozen=True, eq=False)
class Taxonomy:
    """Immutable concept DAG plus a term index.

    Ancestor sets and primary root paths are computed once at construction,
    so every query method is a read and concurrent use needs no locking.
    """

    concepts: frozenset
    parent_edges: dict  # child -> tuple of parents, first is primary
    roots: frozenset
    term_index: dict  # normalized term -> tuple of ConceptId, sense order
    _ancestors: dict = field(repr=False)
    _primary_path: dict = field(repr=False)  # concept -> (concept, ..., root)
    _canonical: dict = field(repr=False)  # concept -> first surface term
    _surface: dict = field(repr=False)  # normalized term -> surface as written

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[tuple[str, str]],
        terms: Iterable[tuple[str, str]] = (),
        concepts: Iterable[str] = (),
    ) -> "Taxonomy":
        """Build from ``(child, parent)`` edges and ``(term, concept)`` pairs."""
        parents: dict[str, list[str]] = {}
        declared: dict[str, None] = {}
        for c in concepts:
            _check_id(c)
            declared.setdefault(c, None)
        for child, parent in edges:
            _check_id(child)
            _check_id(parent)
            declared.setdefault(child, None)
            declared.setdefault(parent, None)
            plist = parents.setdefault(child, [])
            if parent not in plist:
                plist.append(parent)

        order = _topological_order(declared, parents)

        parent_edges = {c: tuple(parents.get(c, ())) for c in declared}
        roots = frozenset(c for c, ps in parent_edges.items() if not ps)

        ancestors: dict[str, frozenset] = {}
        primary: dict[str, tuple] = {}
        for c in order:
            ps = parent_edges[c]
            acc = {c}
            for p in ps:
                acc |= ancestors[p]
            ancestors[c] = frozenset(acc)
            primary[c] = (c,) + primary[ps[0]] if ps else (c,)

        term_index: dict[str, list[str]] = {}
        surface: dict[str, str] = {}
        canonical: dict[str, str] = {}
        for term, cid in terms:
            key = normalize_term(term)
            if not key:
                raise TaxonomyError(f"empty term for concept {cid!r}")
            if cid not in declared:
                raise TaxonomyError(f"term {term!r} references undeclared concept {cid!r}")
            senses = term_index.setdefault(key, [])
            if cid not in senses:
                senses.append(cid)
            surface.setdefault(key, term.strip().lower())
            canonical.setdefault(cid, term.strip().lower())

        return cls(
            concepts=frozenset(declared),
            parent_edges=parent_edges,
            roots=roots,
            term_index={k: tuple(v) for k, v in term_index.items()},
            _ancestors=ancestors,
            _primary_path=primary,
            _canonical=canonical,
            _surface=surface,
        )

    def __contains__(self, c: object) -> bool:
        return c in self.concepts

    def __len__(self) -> int:
        return len(self.concepts)

    def _require(self, c: ConceptId) -> None:
        if c not in self.concepts:
            raise KeyError(f"unknown concept id {c!r}")

    def ancestors(self, c: ConceptId) -> frozenset:
        """Reflexive-transitive closure over all parent paths of ``c``."""
        try:
            return self._ancestors[c]
        except KeyError:
            raise KeyError(f"unknown concept id {c!r}") from None

    def depth(self, c: ConceptId) -> int:
        """Length of the primary (first-parent) path from ``c`` to its root."""
        self._require(c)
        return len(self._primary_path[c]) - 1

    def primary_path(self, c: ConceptId) -> tuple:
        self._require(c)
        return self._primary_path[c]

    def resolve_term(self, term: str) -> Optional[ConceptId]:
        senses = self.term_index.get(normalize_term(term))
        return senses[0] if senses else None

    def surface(self, term: str) -> Optional[str]:
        """Spelling of a term as first written in the taxonomy file."""
        return self._surface.get(normalize_term(term))

    def canonical_term(self, c: ConceptId) -> str:
        """First surface term mapped to ``c``, else the raw id."""
        self._require(c)
        return self._canonical.get(c, c)

    def concept_distance(self, c1: ConceptId, c2: ConceptId) -> float:
        t1 = self.ancestors(c1)
        t2 = self.ancestors(c2)
        if t1 is t2:
            return 0.0
        n_union = len(t1 | t2)
        n_shared = len(t1 & t2)
        return math.log2(1.0 + (n_union - n_shared) / n_union)

    def concept_similarity(self, c1: ConceptId, c2: ConceptId) -> float:
        return 1.0 - self.concept_distance(c1, c2)

    def generalization_node(self, c: ConceptId) -> ConceptId:
        """Half-depth ancestor on the primary path; strictly shallower unless a root."""
        path = self.primary_path(c)
        d = len(path) - 1
        if d == 0:
            return c
        target_depth = min(math.ceil(d / 2), d - 1)
        # path[0] is c at depth d, path[i] sits at depth d - i
        return path[d - target_depth]


def _check_id(c: str) -> None:
    if not _CONCEPT_RE.match(c):
        raise TaxonomyError(f"invalid concept id {c!r}")


def _topological_order(declared: dict, parents: dict) -> list:
    ts = TopologicalSorter({c: parents.get(c, ()) for c in declared})
    try:
        return list(ts.static_order())
    except CycleError as exc:
        cycle = exc.args[1]
        # graphlib reports [n0, n1, ..., n0] where each node depends on the next
        child, parent = cycle[1], cycle[0]
        if parent not in parents.get(child, ()):
            child, parent = cycle[0], cycle[1]
        raise TaxonomyError(f"cycle detected at edge {child} ISA {parent}") from None


def load_taxonomy(source: TextIO | Iterable[str]) -> Taxonomy:
    """Parse the line-oriented taxonomy format. Errors carry the line number."""
    edges: list[tuple[str, str]] = []
    terms: list[tuple[str, str]] = []
    concepts: list[str] = []
    for lineno, raw in enumerate(source, start=1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cols = line.split("\t")
        kind = cols[0]
        try:
            if kind == "E" and len(cols) == 3:
                _check_id(cols[1])
                _check_id(cols[2])
                edges.append((cols[1], cols[2]))
            elif kind == "T" and len(cols) == 3 and cols[1].strip():
                _check_id(cols[2])
                terms.append((cols[1], cols[2]))
            elif kind == "C" and len(cols) == 2:
                _check_id(cols[1])
                concepts.append(cols[1])
            else:
                raise TaxonomyError(f"unrecognized record {line!r}")
        except TaxonomyError as exc:
            raise TaxonomyError(f"line {lineno}: {exc}") from None
    return Taxonomy.from_edges(edges, terms, concepts)


def dump_taxonomy(tax: Taxonomy) -> str:
    """Serialize back to the file format (edges, isolated concepts, terms)."""
    lines = []
    for c in sorted(tax.concepts):
        ps = tax.parent_edges[c]
        for p in ps:
            lines.append(f"E\t{c}\t{p}")
        if not ps and not any(c in v for v in tax.parent_edges.values()):
            lines.append(f"C\t{c}")
    for key in sorted(tax.term_index):
        for cid in tax.term_index[key]:
            lines.append(f"T\t{tax._surface[key]}\t{cid}")
    return "\n".join(lines) + "\n"
