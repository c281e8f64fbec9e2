"""Scoring documents against a trained model."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from fpnb.nbmodel import ClassModel, Itemset
from fpnb.preprocess import KeywordSet

__all__ = ["MatchResult", "Classification", "match_sets", "score", "classify_batch", "format_classification"]


@dataclass(frozen=True)
class MatchResult:
    matched_sets: tuple[Itemset, ...]

    @property
    def coverage(self) -> int:
        return len(set().union(*self.matched_sets)) if self.matched_sets else 0

    def __bool__(self):
        return bool(self.matched_sets)


@dataclass(frozen=True)
class Classification:
    doc_id: str
    scores: tuple[tuple[str, float], ...]
    predicted: str
    matched: MatchResult
    fallback: bool

    def score_of(self, cls: str) -> float:
        return dict(self.scores)[cls]


def match_sets(keywords: KeywordSet, model: ClassModel) -> MatchResult:
    """Inclusion-maximal vocabulary sets contained in the document."""
    kw = keywords.keywords
    inside = [s for s in model.vocabulary if kw.issuperset(s)]
    # Vocabulary is sorted by size, so only larger sets can absorb a set.
    maximal = [
        s for s in inside
        if not any(len(t) > len(s) and set(t).issuperset(s) for t in inside)
    ]
    maximal.sort(key=lambda s: (-len(s), s))
    return MatchResult(tuple(maximal))


def score(keywords: KeywordSet, model: ClassModel) -> Classification:
    matched = match_sets(keywords, model)
    scores = []
    for cls, prior in zip(model.classes, model.priors):
        value = prior * math.prod(model.likelihood(s, cls) for s in matched.matched_sets)
        scores.append((cls, value))
    # max() keeps the first maximum, i.e. declaration order breaks ties
    predicted = max(scores, key=lambda kv: kv[1])[0]
    return Classification(keywords.id, tuple(scores), predicted, matched, fallback=not matched)


def classify_batch(docs: Sequence[KeywordSet], model: ClassModel) -> list[Classification]:
    return [score(d, model) for d in docs]


def format_classification(result: Classification) -> str:
    """One TSV row: id, predicted, ``class=score`` per class, matched sets."""
    fields = [result.doc_id, result.predicted]
    fields += [f"{cls}={value:.10g}" for cls, value in result.scores]
    fields.append(";".join(",".join(s) for s in result.matched.matched_sets))
    return "\t".join(fields)
