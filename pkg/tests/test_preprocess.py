import pytest
from hypothesis import given, settings, strategies as st

from fpnb.preprocess import (
    KeywordSet,
    PipelineConfig,
    RawDocument,
    Stemming,
    builtin_lexicon,
    builtin_stopwords,
    keyword_set,
    normalize_tokens,
    preprocess_document,
    read_lexicon,
    read_wordlist,
    singularize,
    tokenize,
)

from example_data import FIXTURES, TRAIN_KEYWORDS, TEST_KEYWORDS


def _raw_rows(name):
    for line in (FIXTURES / name).read_text().splitlines()[1:]:
        doc_id, *_, text = line.split("\t")
        yield doc_id, text


@pytest.mark.parametrize("text,expected", [
    ("A computer network is a group", ["a", "computer", "network", "is", "a", "group"]),
    ("", []),
    ("inter-network", ["inter", "network"]),
    ("Web2.0 sites!", ["web", "sites"]),
])
def test_tokenize(text, expected):
    assert tokenize(text) == expected


@pytest.mark.parametrize("word,expected", [
    ("computers", "computer"),
    ("communities", "community"),
    ("glass", "glass"),
    ("ties", "tie"),  # too short for the "ies" rule, falls to trailing "s"
    ("buses", "bus"),
    ("bus", "bus"),
    ("data", "data"),
])
def test_singularize(word, expected):
    assert singularize(word) == expected


def test_raw_d1_to_keywords(train_cfg):
    kw = preprocess_document(RawDocument("D1", dict(_raw_rows("train_raw.tsv"))["D1"]), train_cfg)
    assert kw.keywords == {"website", "application", "people", "information"}


def test_raw_t3_to_keywords(test_cfg):
    kw = preprocess_document(RawDocument("T3", dict(_raw_rows("test_raw.tsv"))["T3"]), test_cfg)
    assert kw.keywords == {"network", "group", "firewall", "guard", "computer", "unauthorize", "data", "access"}


def test_all_stopwords_gives_empty_set():
    cfg = PipelineConfig(stopwords=builtin_stopwords())
    assert preprocess_document(RawDocument("x", "the the the"), cfg).keywords == frozenset()


@pytest.mark.parametrize("doc_id,text", list(_raw_rows("train_raw.tsv")))
def test_every_training_document(doc_id, text, train_cfg):
    assert preprocess_document(RawDocument(doc_id, text), train_cfg).keywords == set(TRAIN_KEYWORDS[doc_id].split())


@pytest.mark.parametrize("doc_id,text", list(_raw_rows("test_raw.tsv")))
def test_every_test_document(doc_id, text, test_cfg):
    expected = {w.strip() for w in TEST_KEYWORDS[doc_id].split(",")}
    assert preprocess_document(RawDocument(doc_id, text), test_cfg).keywords == expected


def test_id_and_label_carried_through(train_cfg):
    kw = preprocess_document(RawDocument("D9", "computers and cables", "CN"), train_cfg)
    assert (kw.id, kw.label, kw.order) == ("D9", "CN", ("computer", "cable"))


def test_stemming_applies_after_lexicon():
    cfg = PipelineConfig(lexicon=builtin_lexicon("train"), stemming=Stemming.PORTER)
    kw = preprocess_document(RawDocument("d", "communities of information"), cfg)
    assert kw.keywords == {"commun", "inform"}


def test_without_lexicon_singularizes_everything():
    cfg = PipelineConfig(stopwords=builtin_stopwords())
    assert normalize_tokens("The networks of computers", cfg) == ["network", "computer"]


def test_singularize_off_keeps_surface_forms():
    cfg = PipelineConfig(singularize=False)
    assert normalize_tokens("networks", cfg) == ["networks"]


def test_lexicon_alias_and_inflections():
    lex = builtin_lexicon("test")
    cfg = PipelineConfig(lexicon=lex)
    assert normalize_tokens("sites sharing unauthorized assembled", cfg) == [
        "website", "share", "unauthorize", "assemble"]


def test_shipped_lists_are_consistent():
    stop = builtin_stopwords()
    for which in ("train", "test"):
        lex = builtin_lexicon(which)
        assert not lex.words & stop
        assert all(w.isalpha() and w.islower() for w in lex.words)
    assert builtin_lexicon("train").words == set().union(*(set(v.split()) for v in TRAIN_KEYWORDS.values()))
    assert builtin_lexicon("test").words == {w.strip() for v in TEST_KEYWORDS.values() for w in v.split(",")}


def test_wordlist_file_format(tmp_path):
    p = tmp_path / "w.txt"
    p.write_text("# comment\nfoo\n\nbar\n", encoding="utf-8")
    assert read_wordlist(p) == {"foo", "bar"}
    p.write_text("Foo\n", encoding="utf-8")
    with pytest.raises(ValueError, match="lowercase"):
        read_wordlist(p)


def test_lexicon_file_with_aliases(tmp_path):
    p = tmp_path / "lex.txt"
    p.write_text("# x\nwebsite site web\npeople\n", encoding="utf-8")
    lex = read_lexicon(p)
    assert lex.words == {"website", "people"}
    assert lex.resolve("web") == "website" and lex.resolve("nope") is None


def test_keyword_set_validation():
    with pytest.raises(ValueError):
        KeywordSet("d", frozenset({"Upper"}))
    with pytest.raises(ValueError):
        KeywordSet("d", frozenset({"two words"}))
    with pytest.raises(ValueError):
        RawDocument("", "text")
    assert keyword_set("d", ["b", "a", "b"]).order == ("b", "a")
    assert KeywordSet("d", frozenset("ab"), order=("b", "a")) == KeywordSet("d", frozenset("ab"))


# --- properties -------------------------------------------------------------

_PAPER_WORDS = sorted(set(" ".join(TRAIN_KEYWORDS.values()).split()))
_NOISE = ["the", "of", "social", "common", "and", "sites", "computers", "communities", "xyzzy"]
_texts = st.lists(st.sampled_from(_PAPER_WORDS + _NOISE), max_size=25).map(" ".join)


@given(_texts)
def test_idempotent_under_builtin_config(text):
    cfg = PipelineConfig.builtin("train")
    once = preprocess_document(RawDocument("d", text), cfg)
    twice = preprocess_document(RawDocument("d", " ".join(sorted(once.keywords))), cfg)
    assert once == twice


@given(st.lists(st.text(alphabet="abcdefgh ", max_size=12), max_size=12))
def test_idempotent_without_normalization(words):
    cfg = PipelineConfig(stopwords=frozenset({"a", "be"}), singularize=False)
    once = preprocess_document(RawDocument("d", " ".join(words)), cfg)
    assert preprocess_document(RawDocument("d", " ".join(once.keywords)), cfg) == once


@given(_texts)
def test_dedup_bound(text):
    kw = preprocess_document(RawDocument("d", text), PipelineConfig.builtin("train"))
    assert len(kw.keywords) <= len(tokenize(text))


@settings(max_examples=50)
@given(st.lists(st.sampled_from(_PAPER_WORDS + _NOISE), max_size=20), st.randoms())
def test_order_independence(words, rnd):
    cfg = PipelineConfig.builtin("train")
    shuffled = list(words)
    rnd.shuffle(shuffled)
    a = preprocess_document(RawDocument("d", " ".join(words)), cfg)
    b = preprocess_document(RawDocument("d", " ".join(shuffled)), cfg)
    assert a.keywords == b.keywords
