"""Naive Bayes over per-class frequent word sets.

Training mines each class's transactions separately (size >= 2 sets only);
the vocabulary is the union of those sets.  A set's likelihood for class j
uses the m-estimate ``(n_k + 1) / (n_j + |V|)`` where ``n_k`` counts the
class-j documents containing the set and ``n_j`` counts the sets that were
frequent in class j.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import IO, Iterable, Mapping, Sequence

from fpnb.corpus import Corpus
from fpnb.fpgrowth import mine_frequent_itemsets

__all__ = [
    "FORMAT_HEADER",
    "ClassModel",
    "ModelFormatError",
    "TrainingReport",
    "train",
    "training_report",
    "save_model",
    "load_model",
    "dumps_model",
    "loads_model",
]

FORMAT_HEADER = "#fpnb-model v1"
MIN_SET_SIZE = 2

Itemset = tuple[str, ...]


class ModelFormatError(ValueError):
    def __init__(self, reason: str, line: int | None = None):
        self.reason = reason
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{reason}")


def _itemset_key(items: Itemset):
    return (len(items), ",".join(items))


@dataclass(frozen=True)
class ClassModel:
    classes: tuple[str, ...]
    doc_counts: tuple[int, ...]
    min_sup: int
    vocabulary: tuple[Itemset, ...]
    set_counts: tuple[tuple[int, ...], ...]  # [vocab index][class index] -> n_k
    preprocessing: tuple[tuple[str, str], ...] = ()
    priors: tuple[float, ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "classes", tuple(self.classes))
        object.__setattr__(self, "doc_counts", tuple(int(c) for c in self.doc_counts))
        object.__setattr__(self, "vocabulary", tuple(tuple(sorted(s)) for s in self.vocabulary))
        object.__setattr__(self, "set_counts", tuple(tuple(int(n) for n in row) for row in self.set_counts))
        object.__setattr__(self, "preprocessing", tuple(self.preprocessing))
        self._validate_counts()
        total = sum(self.doc_counts)
        if not self.priors:
            object.__setattr__(self, "priors", tuple(c / total for c in self.doc_counts))
        else:
            object.__setattr__(self, "priors", tuple(self.priors))
        self._validate_priors()
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(self.vocabulary)})
        object.__setattr__(
            self,
            "class_counts",
            tuple(
                sum(1 for row in self.set_counts if row[j] >= self.min_sup)
                for j in range(len(self.classes))
            ),
        )

    def _validate_counts(self):
        k = len(self.classes)
        if k < 2:
            raise ValueError(f"need >= 2 classes, got {k}")
        if len(set(self.classes)) != k:
            raise ValueError("class names must be distinct")
        if len(self.doc_counts) != k:
            raise ValueError("one document count per class required")
        if any(c < 1 for c in self.doc_counts):
            raise ValueError("every class needs at least one training document")
        if self.min_sup < 1:
            raise ValueError("min_sup must be >= 1")
        if len(set(self.vocabulary)) != len(self.vocabulary):
            raise ValueError("vocabulary entries must be unique")
        if len(self.set_counts) != len(self.vocabulary):
            raise ValueError("one count row per vocabulary set required")
        for items, row in zip(self.vocabulary, self.set_counts):
            if len(items) < MIN_SET_SIZE or len(set(items)) != len(items):
                raise ValueError(f"vocabulary set {items!r} must hold >= {MIN_SET_SIZE} distinct items")
            if len(row) != k:
                raise ValueError(f"count row for {items!r} must have {k} entries")
            for n, docs in zip(row, self.doc_counts):
                if not 0 <= n <= docs:
                    raise ValueError(f"count {n} for {items!r} outside [0, {docs}]")

    def _validate_priors(self):
        if len(self.priors) != len(self.classes):
            raise ValueError("one prior per class required")
        if any(not 0 < p <= 1 for p in self.priors):
            raise ValueError("priors must lie in (0, 1]")
        if not math.isclose(sum(self.priors), 1.0, abs_tol=1e-9):
            raise ValueError(f"priors sum to {sum(self.priors):g}, not 1")

    @property
    def vocab_size(self) -> int:
        return len(self.vocabulary)

    def class_index(self, name: str) -> int:
        return self.classes.index(name)

    def count(self, items: Iterable[str], cls: str) -> int:
        return self.set_counts[self._index[tuple(sorted(items))]][self.class_index(cls)]

    def likelihood_fraction(self, items: Iterable[str], cls: str) -> Fraction:
        j = self.class_index(cls)
        n_k = self.set_counts[self._index[tuple(sorted(items))]][j]
        return Fraction(n_k + 1, self.class_counts[j] + self.vocab_size)

    def likelihood(self, items: Iterable[str], cls: str) -> float:
        return float(self.likelihood_fraction(items, cls))

    def likelihood_table(self) -> list[tuple[Itemset, tuple[float, ...]]]:
        return [
            (s, tuple(self.likelihood(s, c) for c in self.classes))
            for s in self.vocabulary
        ]

    def __contains__(self, items) -> bool:
        return tuple(sorted(items)) in self._index


@dataclass(frozen=True)
class TrainingReport:
    classes: tuple[str, ...]
    doc_counts: tuple[int, ...]
    mined_counts: tuple[int, ...]
    priors: tuple[float, ...]
    vocab_size: int
    min_sup: int

    def format(self) -> str:
        lines = [f"min_sup\t{self.min_sup}", f"vocabulary\t{self.vocab_size}"]
        for name, docs, mined, prior in zip(self.classes, self.doc_counts, self.mined_counts, self.priors):
            lines.append(f"class\t{name}\tdocuments={docs}\tword_sets={mined}\tprior={prior:.10g}")
        return "\n".join(lines) + "\n"


def training_report(model: ClassModel) -> TrainingReport:
    return TrainingReport(
        model.classes,
        model.doc_counts,
        model.class_counts,
        model.priors,
        model.vocab_size,
        model.min_sup,
    )


def train(
    corpus: Corpus,
    min_sup: int,
    preprocessing: Mapping[str, str] | None = None,
) -> ClassModel:
    if min_sup < 1:
        raise ValueError("min_sup must be >= 1")
    classes = corpus.classes
    if len(classes) < 2:
        raise ValueError(f"need >= 2 classes, got {len(classes)}")
    per_class = [[d.keywords for d in corpus.by_class(c)] for c in classes]
    for name, docs in zip(classes, per_class):
        if not docs:
            raise ValueError(f"class {name!r} has no training documents")

    vocab: set[Itemset] = set()
    for docs in per_class:
        vocab.update(s.items for s in mine_frequent_itemsets(docs, min_sup, MIN_SET_SIZE))
    vocabulary = sorted(vocab, key=_itemset_key)
    set_counts = [
        tuple(sum(1 for kw in docs if kw.issuperset(items)) for docs in per_class)
        for items in vocabulary
    ]
    return ClassModel(
        classes=classes,
        doc_counts=tuple(len(d) for d in per_class),
        min_sup=min_sup,
        vocabulary=tuple(vocabulary),
        set_counts=tuple(set_counts),
        preprocessing=tuple(sorted((preprocessing or {}).items())),
    )


def dumps_model(model: ClassModel) -> str:
    out = io.StringIO()
    _write(model, out)
    return out.getvalue()


def save_model(model: ClassModel, destination: str | Path | IO[str]) -> None:
    if hasattr(destination, "write"):
        _write(model, destination)
        return
    with open(destination, "w", encoding="utf-8", newline="\n") as fh:
        _write(model, fh)


def _write(model: ClassModel, fh: IO[str]) -> None:
    fh.write(FORMAT_HEADER + "\n")
    fh.write(f"minsup {model.min_sup}\n")
    if model.preprocessing:
        flags = " ".join(f"{k}={v}" for k, v in model.preprocessing)
        fh.write(f"preprocess {flags}\n")
    for name, docs in zip(model.classes, model.doc_counts):
        fh.write(f"class {name} {docs}\n")
    fh.write(f"vocab {model.vocab_size}\n")
    rows = sorted(zip(model.vocabulary, model.set_counts), key=lambda r: _itemset_key(r[0]))
    for items, counts in rows:
        fh.write(",".join(items) + "\t" + "\t".join(map(str, counts)) + "\n")


def load_model(source: str | Path | IO[str]) -> ClassModel:
    if hasattr(source, "read"):
        return loads_model(source.read())
    with open(source, encoding="utf-8") as fh:
        return loads_model(fh.read())


def _int(text: str, what: str, lineno: int) -> int:
    try:
        return int(text)
    except ValueError:
        raise ModelFormatError(f"{what} is not an integer: {text!r}", lineno) from None


def loads_model(text: str) -> ClassModel:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    pos = 0

    def take(section: str) -> tuple[int, str]:
        nonlocal pos
        if pos >= len(lines):
            raise ModelFormatError(f"file truncated: missing section {section!r}", pos + 1)
        pos += 1
        return pos, lines[pos - 1]

    lineno, line = take("header")
    if not line.startswith("#fpnb-model"):
        raise ModelFormatError(f"expected {FORMAT_HEADER!r}, found {line!r}", lineno)
    if line != FORMAT_HEADER:
        raise ModelFormatError(f"unsupported model version {line.split()[-1]!r}", lineno)

    lineno, line = take("minsup")
    key, _, value = line.partition(" ")
    if key != "minsup":
        raise ModelFormatError(f"expected 'minsup <int>', found {line!r}", lineno)
    min_sup = _int(value, "minsup", lineno)

    preprocessing: list[tuple[str, str]] = []
    if pos < len(lines) and lines[pos].startswith("preprocess "):
        lineno, line = take("preprocess")
        for tok in line.split()[1:]:
            k, sep, v = tok.partition("=")
            if not sep:
                raise ModelFormatError(f"bad preprocess flag {tok!r}", lineno)
            preprocessing.append((k, v))

    classes, doc_counts = [], []
    while pos < len(lines) and lines[pos].startswith("class "):
        lineno, line = take("class")
        name, _, docs = line[len("class "):].rpartition(" ")
        if not name:
            raise ModelFormatError(f"expected 'class <name> <doc_count>', found {line!r}", lineno)
        classes.append(name)
        doc_counts.append(_int(docs, "class document count", lineno))
    if not classes:
        raise ModelFormatError("file truncated: missing section 'class'" if pos >= len(lines)
                               else f"expected 'class <name> <doc_count>', found {lines[pos]!r}", pos + 1)

    lineno, line = take("vocab")
    key, _, value = line.partition(" ")
    if key != "vocab":
        raise ModelFormatError(f"expected 'vocab <size>', found {line!r}", lineno)
    size = _int(value, "vocab size", lineno)

    vocabulary, set_counts = [], []
    for _ in range(size):
        if pos >= len(lines):
            raise ModelFormatError(
                f"file truncated: missing section 'itemsets' ({size - len(vocabulary)} of {size} lines absent)",
                pos + 1,
            )
        lineno, line = take("itemsets")
        fields = line.split("\t")
        if len(fields) != len(classes) + 1:
            raise ModelFormatError(f"expected {len(classes) + 1} tab-separated fields, found {len(fields)}", lineno)
        items = tuple(fields[0].split(","))
        if list(items) != sorted(items) or not all(items):
            raise ModelFormatError(f"itemset {fields[0]!r} is not in ascending order", lineno)
        vocabulary.append(items)
        set_counts.append(tuple(_int(f, "set count", lineno) for f in fields[1:]))
    if pos < len(lines):
        raise ModelFormatError(f"unexpected trailing content {lines[pos]!r}", pos + 1)
    if [_itemset_key(s) for s in vocabulary] != sorted(_itemset_key(s) for s in vocabulary):
        raise ModelFormatError("itemset lines not sorted by (size, items)")

    try:
        return ClassModel(
            classes=tuple(classes),
            doc_counts=tuple(doc_counts),
            min_sup=min_sup,
            vocabulary=tuple(vocabulary),
            set_counts=tuple(set_counts),
            preprocessing=tuple(preprocessing),
        )
    except ValueError as exc:
        raise ModelFormatError(f"invalid model: {exc}") from None


def likelihood_rows(model: ClassModel, digits: int = 3) -> list[tuple[Itemset, Sequence[float]]]:
    """Likelihood table rounded for display."""
    return [(s, tuple(round(p, digits) for p in row)) for s, row in model.likelihood_table()]
