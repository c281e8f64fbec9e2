"""Raw text -> deduplicated keyword transactions."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

from fpnb.porter import porter_stem

__all__ = [
    "RawDocument",
    "KeywordSet",
    "Stemming",
    "PipelineConfig",
    "Lexicon",
    "tokenize",
    "singularize",
    "porter_stem",
    "normalize_tokens",
    "preprocess_document",
    "keyword_set",
    "read_wordlist",
    "read_lexicon",
    "builtin_stopwords",
    "builtin_lexicon",
]

_NON_ALPHA = re.compile(r"[^A-Za-z]+")


@dataclass(frozen=True)
class RawDocument:
    id: str
    text: str
    label: str | None = None

    def __post_init__(self):
        if not self.id:
            raise ValueError("document id must be nonempty")


@dataclass(frozen=True)
class KeywordSet:
    """A document's deduplicated keywords.

    ``order`` remembers first-occurrence order for display and matrix rows;
    it takes no part in equality.
    """

    id: str
    keywords: frozenset[str]
    label: str | None = None
    order: tuple[str, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        if not self.order:
            object.__setattr__(self, "order", tuple(sorted(self.keywords)))
        else:
            object.__setattr__(self, "order", tuple(dict.fromkeys(self.order)))
        object.__setattr__(self, "keywords", frozenset(self.keywords) | frozenset(self.order))
        if set(self.order) != self.keywords:
            raise ValueError(f"order of {self.id!r} does not cover its keywords")
        for kw in self.keywords:
            if not kw or kw != kw.lower() or any(c.isspace() for c in kw):
                raise ValueError(f"bad keyword {kw!r} in document {self.id!r}")


class Stemming(str, Enum):
    OFF = "off"
    PORTER = "porter"


@dataclass(frozen=True)
class Lexicon:
    """Keyword allow-list.

    ``aliases`` maps a surface word onto the canonical keyword it stands for
    (e.g. ``site`` -> ``website``).
    """

    words: frozenset[str]
    aliases: Mapping[str, str] = field(default_factory=dict)

    def resolve(self, word: str) -> str | None:
        word = self.aliases.get(word, word)
        return word if word in self.words else None

    def __contains__(self, word: str) -> bool:
        return self.resolve(word) is not None


@dataclass(frozen=True)
class PipelineConfig:
    stopwords: frozenset[str] = frozenset()
    lexicon: Lexicon | None = None
    stemming: Stemming = Stemming.OFF
    singularize: bool = True

    def __post_init__(self):
        object.__setattr__(self, "stopwords", frozenset(self.stopwords))
        object.__setattr__(self, "stemming", Stemming(self.stemming))
        if any(w != w.lower() for w in self.stopwords):
            raise ValueError("stopwords must be lowercase")
        if self.lexicon is not None and any(w != w.lower() for w in self.lexicon.words):
            raise ValueError("lexicon must be lowercase")

    @classmethod
    def builtin(cls, lexicon: str = "train") -> PipelineConfig:
        """Shipped stopwords + lexicon, singularize on, stemming off."""
        return cls(
            stopwords=builtin_stopwords(),
            lexicon=builtin_lexicon(lexicon),
            stemming=Stemming.OFF,
            singularize=True,
        )


def tokenize(text: str) -> list[str]:
    return [tok.lower() for tok in _NON_ALPHA.split(text) if tok]


def singularize(word: str) -> str:
    """Strip an English plural suffix.

    >>> singularize("communities"), singularize("glass"), singularize("computers")
    ('community', 'glass', 'computer')
    """
    if word.endswith("ies") and len(word) > 4:
        return word[:-3] + "y"
    if word.endswith("ses"):
        return word[:-2]
    if word.endswith("s") and not word.endswith("ss") and len(word) > 3:
        return word[:-1]
    return word


def _inflection_candidates(word: str) -> list[str]:
    # Ordered most-specific first; only consulted against a lexicon.
    out = [word, singularize(word)]
    if word.endswith("s") and not word.endswith("ss"):
        out.append(word[:-1])
    if word.endswith("ed"):
        out += [word[:-1], word[:-2]]
    if word.endswith("ing"):
        out += [word[:-3] + "e", word[:-3]]
    return out


def _resolve(word: str, cfg: PipelineConfig) -> str | None:
    lex = cfg.lexicon
    if lex is None:
        return singularize(word) if cfg.singularize else word
    candidates = _inflection_candidates(word) if cfg.singularize else [word]
    for cand in candidates:
        hit = lex.resolve(cand)
        if hit is not None:
            return hit
    return None


def normalize_tokens(text: str, cfg: PipelineConfig) -> list[str]:
    """Normalized keyword occurrences of ``text``, before deduplication."""
    out = []
    for tok in tokenize(text):
        if tok in cfg.stopwords:
            continue
        word = _resolve(tok, cfg)
        if word is None:
            continue
        if cfg.stemming is Stemming.PORTER:
            word = porter_stem(word)
        out.append(word)
    return out


def preprocess_document(doc: RawDocument, cfg: PipelineConfig) -> KeywordSet:
    tokens = normalize_tokens(doc.text, cfg)
    return KeywordSet(doc.id, frozenset(tokens), doc.label, order=tuple(tokens))


def keyword_set(doc_id: str, words: Iterable[str], label: str | None = None) -> KeywordSet:
    """KeywordSet from an ordered word sequence."""
    words = tuple(words)
    return KeywordSet(doc_id, frozenset(words), label, order=words)


def _content_lines(lines: Iterable[str]):
    for line in lines:
        line = line.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        yield line


def read_wordlist(path: str | Path) -> frozenset[str]:
    with open(path, encoding="utf-8") as fh:
        words = [line.strip() for line in _content_lines(fh)]
    _check_lowercase(words, path)
    return frozenset(words)


def read_lexicon(path: str | Path) -> Lexicon:
    """Read a lexicon file.

    Each content line holds a canonical keyword, optionally followed by
    whitespace-separated surface variants that resolve to it.
    """
    with open(path, encoding="utf-8") as fh:
        return _parse_lexicon(_content_lines(fh), path)


def _parse_lexicon(lines, source) -> Lexicon:
    words, aliases = set(), {}
    for line in lines:
        canonical, *variants = line.split()
        _check_lowercase([canonical, *variants], source)
        words.add(canonical)
        for v in variants:
            aliases[v] = canonical
    return Lexicon(frozenset(words), aliases)


def _check_lowercase(words, source):
    for w in words:
        if w != w.lower():
            raise ValueError(f"{source}: word {w!r} is not lowercase")


def _data_file(name: str):
    return resources.files("fpnb") / "data" / name


def builtin_stopwords() -> frozenset[str]:
    with resources.as_file(_data_file("stopwords.txt")) as p:
        return read_wordlist(p)


def builtin_lexicon(which: str = "train") -> Lexicon:
    """Shipped lexicon: ``train`` (training vocabulary) or ``test``."""
    if which not in ("train", "test"):
        raise ValueError(f"unknown builtin lexicon {which!r}")
    with resources.as_file(_data_file(f"lexicon_{which}.txt")) as p:
        return read_lexicon(p)
