"""Reading corpus files.

A corpus file starts with ``#format: raw`` or ``#format: pre``.  Each
following line is ``id<TAB>label<TAB>text`` (raw) or
``id<TAB>label<TAB>space-separated keywords`` (pre); the label column may
be omitted for unlabeled test files.  Other ``#`` lines and blank lines are
ignored.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from fpnb.corpus import Corpus
from fpnb.preprocess import KeywordSet, PipelineConfig, RawDocument, keyword_set, preprocess_document

__all__ = ["CorpusFileError", "CorpusFile", "read_corpus_file", "load_keyword_sets", "load_corpus"]

FORMATS = ("raw", "pre")


class CorpusFileError(ValueError):
    def __init__(self, path, line: int | None, reason: str):
        self.path, self.line, self.reason = path, line, reason
        where = f"{path}:{line}" if line is not None else str(path)
        super().__init__(f"{where}: {reason}")


@dataclass(frozen=True)
class CorpusFile:
    path: Path
    format: str
    rows: tuple[tuple[str, str | None, str], ...]  # (id, label, text-or-keywords)

    @property
    def labeled(self) -> bool:
        return any(label for _, label, _ in self.rows)


def read_corpus_file(path: str | Path) -> CorpusFile:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise CorpusFileError(path, None, f"not valid UTF-8 ({exc.reason})") from None
    lines = text.split("\n")
    if not lines or not lines[0].startswith("#format:"):
        if not text.strip():
            return CorpusFile(path, "pre", ())
        raise CorpusFileError(path, 1, "first line must be '#format: raw' or '#format: pre'")
    fmt = lines[0].split(":", 1)[1].strip()
    if fmt not in FORMATS:
        raise CorpusFileError(path, 1, f"unknown format {fmt!r}")

    rows, seen = [], set()
    for lineno, line in enumerate(lines[1:], start=2):
        line = line.rstrip("\r")
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) == 3:
            doc_id, label, body = fields
        elif len(fields) == 2:
            (doc_id, body), label = fields, None
        else:
            raise CorpusFileError(path, lineno, f"expected 2 or 3 tab-separated fields, found {len(fields)}")
        doc_id = doc_id.strip()
        if not doc_id:
            raise CorpusFileError(path, lineno, "empty document id")
        if doc_id in seen:
            raise CorpusFileError(path, lineno, f"duplicate document id {doc_id!r}")
        seen.add(doc_id)
        rows.append((doc_id, (label or "").strip() or None, body))
    return CorpusFile(path, fmt, tuple(rows))


def load_keyword_sets(path: str | Path, cfg: PipelineConfig) -> list[KeywordSet]:
    """Keyword sets for every document; raw text goes through ``cfg``."""
    cf = read_corpus_file(path)
    out = []
    for doc_id, label, body in cf.rows:
        if cf.format == "raw":
            out.append(preprocess_document(RawDocument(doc_id, body, label), cfg))
            continue
        words = body.split()
        bad = [w for w in words if w != w.lower()]
        if bad:
            raise CorpusFileError(cf.path, None, f"document {doc_id!r}: keyword {bad[0]!r} is not lowercase")
        out.append(keyword_set(doc_id, words, label))
    return out


def load_corpus(path: str | Path, cfg: PipelineConfig) -> Corpus:
    docs = load_keyword_sets(path, cfg)
    unlabeled = [d.id for d in docs if not d.label]
    if unlabeled:
        raise CorpusFileError(path, None, f"training document {unlabeled[0]!r} has no label")
    return Corpus(tuple(docs))
