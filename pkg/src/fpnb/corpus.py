"""Corpus container, binary term-document matrix and TF-IDF weights."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from fpnb.preprocess import KeywordSet

__all__ = [
    "Corpus",
    "TermDocumentMatrix",
    "TfIdfWeight",
    "build_matrix",
    "tf",
    "idf",
    "tfidf",
]

MATRIX_CORNER = "Keywords"


@dataclass(frozen=True)
class Corpus:
    documents: tuple[KeywordSet, ...]
    classes: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "documents", tuple(self.documents))
        if not self.classes:
            seen = dict.fromkeys(d.label for d in self.documents if d.label)
            object.__setattr__(self, "classes", tuple(seen))
        else:
            object.__setattr__(self, "classes", tuple(self.classes))
        ids = [d.id for d in self.documents]
        if len(set(ids)) != len(ids):
            dup = next(i for i, c in Counter(ids).items() if c > 1)
            raise ValueError(f"duplicate document id {dup!r}")
        for d in self.documents:
            if d.label and d.label not in self.classes:
                raise ValueError(f"label {d.label!r} of {d.id!r} is not a declared class")
        if len(set(self.classes)) != len(self.classes):
            raise ValueError("class names must be distinct")

    def __len__(self):
        return len(self.documents)

    def by_class(self, label: str) -> list[KeywordSet]:
        return [d for d in self.documents if d.label == label]


@dataclass(frozen=True)
class TermDocumentMatrix:
    terms: tuple[str, ...]
    doc_ids: tuple[str, ...]
    cells: np.ndarray  # uint8, shape (len(terms), len(doc_ids))

    def __post_init__(self):
        if self.cells.shape != (len(self.terms), len(self.doc_ids)):
            raise ValueError("cell shape does not match terms x documents")
        self.cells.setflags(write=False)

    def cell(self, term: str, doc_id: str) -> int:
        return int(self.cells[self.terms.index(term), self.doc_ids.index(doc_id)])

    def document_frequency(self, term: str) -> int:
        if term not in self.terms:
            return 0
        return int(self.cells[self.terms.index(term)].sum())

    def triples(self) -> set[tuple[str, str, int]]:
        return {
            (t, d, int(self.cells[i, j]))
            for i, t in enumerate(self.terms)
            for j, d in enumerate(self.doc_ids)
        }

    def to_tsv(self) -> str:
        lines = ["\t".join((MATRIX_CORNER, *self.doc_ids))]
        for term, row in zip(self.terms, self.cells):
            lines.append("\t".join((term, *map(str, row.tolist()))))
        return "\n".join(lines) + "\n"


def build_matrix(
    corpus: Corpus | Sequence[KeywordSet],
    term_order: Sequence[str] | None = None,
) -> TermDocumentMatrix:
    """Binary term x document incidence.

    Terms appear in order of first occurrence, scanning documents in corpus
    order and each document's keywords in their recorded order.  ``term_order``
    overrides the row order; it must list exactly the corpus vocabulary.
    """
    docs = corpus.documents if isinstance(corpus, Corpus) else tuple(corpus)
    if not docs:
        raise ValueError("corpus has no documents")
    if not any(d.keywords for d in docs):
        raise ValueError("every document in the corpus is empty")
    seen: dict[str, None] = {}
    for d in docs:
        seen.update(dict.fromkeys(d.order))
    terms = tuple(seen)
    if term_order is not None:
        if sorted(term_order) != sorted(terms):
            missing = set(terms) ^ set(term_order)
            raise ValueError(f"term_order does not match corpus vocabulary: {sorted(missing)}")
        terms = tuple(term_order)
    index = {t: i for i, t in enumerate(terms)}
    cells = np.zeros((len(terms), len(docs)), dtype=np.uint8)
    for j, d in enumerate(docs):
        for kw in d.keywords:
            cells[index[kw], j] = 1
    return TermDocumentMatrix(terms, tuple(d.id for d in docs), cells)


@dataclass(frozen=True)
class TfIdfWeight:
    term: str
    doc_id: str
    tf: float
    idf: float

    @property
    def weight(self) -> float:
        return self.tf * self.idf


def tf(term: str, tokens: Sequence[str] | Counter) -> float:
    """Occurrences of ``term`` over all token occurrences (pre-deduplication)."""
    counts = tokens if isinstance(tokens, Counter) else Counter(tokens)
    total = sum(counts.values())
    if total == 0:
        raise ValueError("tf of a document with no tokens")
    return counts[term] / total


def idf(term: str, matrix: TermDocumentMatrix) -> float:
    """log10(N / df), N = number of documents."""
    df = matrix.document_frequency(term)
    if df == 0:
        raise ValueError(f"term {term!r} occurs in no document")
    return math.log10(len(matrix.doc_ids) / df)


def tfidf(doc_tokens: dict[str, Sequence[str]], matrix: TermDocumentMatrix) -> list[TfIdfWeight]:
    """Weights for every (term, document) cell of ``matrix``.

    ``doc_tokens`` maps each document id to its normalized tokens before
    deduplication.
    """
    out = []
    idfs = {t: idf(t, matrix) for t in matrix.terms}
    for doc_id in matrix.doc_ids:
        counts = Counter(doc_tokens[doc_id])
        for term in matrix.terms:
            out.append(TfIdfWeight(term, doc_id, tf(term, counts), idfs[term]))
    return out
