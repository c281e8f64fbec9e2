from collections import Counter
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from fpnb.fpgrowth import (
    FrequentItemset,
    build_fp_tree,
    dump_tree,
    format_itemsets,
    mine_bruteforce,
    mine_frequent_itemsets,
    read_transactions,
)

from example_data import CN_DOCS, FIXTURES, SN_DOCS, LIKELIHOODS, LIKELIHOOD_CN_ROWS, LIKELIHOOD_SN_ROWS, matrix_documents, wordset

DOCS = matrix_documents()
SN_DB = [DOCS[d] for d in SN_DOCS]
CN_DB = [DOCS[d] for d in CN_DOCS]


def _as_pairs(found):
    return {(s.items, s.support) for s in found}


def _support(db, items):
    return sum(1 for t in db if set(items) <= t)


# --- tree construction ------------------------------------------------------

def test_sn_tree_header():
    tree = build_fp_tree(SN_DB, 2)
    expected = {k: v for k, v in Counter(w for t in SN_DB for w in t).items() if v >= 2}
    assert {it: e.support for it, e in tree.header.items()} == expected
    assert expected == {"people": 6, "website": 3, "information": 3,
                        "community": 3, "interest": 3, "network": 3}
    assert list(tree.root.children) == ["people"]
    assert tree.root.children["people"].count == 6


def test_item_order_ties_are_lexicographic():
    tree = build_fp_tree(SN_DB, 2)
    assert tree.item_order == ["people", "community", "information", "interest", "network", "website"]


def test_empty_database():
    tree = build_fp_tree([], 1)
    assert tree.is_empty and tree.header == {}
    assert dump_tree(tree) == "ROOT"


def test_single_transaction():
    tree = build_fp_tree([{"a", "b"}], 1)
    assert dump_tree(tree) == "ROOT\n  a:1\n    b:1"


def test_dump_format():
    tree = build_fp_tree([{"a", "b"}, {"a"}], 1)
    assert dump_tree(tree) == "ROOT\n  a:2\n    b:1"


def test_cn_tree_dump():
    lines = dump_tree(build_fp_tree(CN_DB, 2)).splitlines()
    assert lines[0] == "ROOT"
    assert {l.strip() for l in lines[1:]} == {"computer:4", "network:4", "group:3", "data:2"}


def test_min_sup_must_be_positive():
    with pytest.raises(ValueError):
        build_fp_tree([{"a"}], 0)
    with pytest.raises(ValueError):
        mine_bruteforce([{"a"}], 0)


# --- mining -----------------------------------------------------------------

@pytest.mark.parametrize("db,rows", [(SN_DB, LIKELIHOOD_SN_ROWS), (CN_DB, LIKELIHOOD_CN_ROWS)])
@pytest.mark.parametrize("single_path", [True, False])
def test_per_class_sets_match_expected(db, rows, single_path):
    found = mine_frequent_itemsets(db, 2, 2, single_path=single_path)
    assert {s.items for s in found} == {wordset(LIKELIHOODS[r - 1][0]) for r in rows}
    for s in found:
        assert s.support == _support(db, s.items)


def test_network_computer_support():
    found = {s.items: s.support for s in mine_frequent_itemsets(CN_DB, 2, 2)}
    assert found[("computer", "network")] == 4


def test_min_sup_above_database_size():
    assert mine_frequent_itemsets(SN_DB, 7) == set()
    assert mine_bruteforce(SN_DB, 7) == set()


@pytest.mark.parametrize("db,min_sup,min_size,expected", [
    ([{"a"}, {"a"}], 2, 1, {(("a",), 2)}),
    ([{"a", "b"}], 2, 1, set()),
    ([{"a", "b"}], 1, 0, {(("a",), 1), (("b",), 1), (("a", "b"), 1)}),
])
def test_small_cases(db, min_sup, min_size, expected):
    assert _as_pairs(mine_bruteforce(db, min_sup, min_size)) == expected
    assert _as_pairs(mine_frequent_itemsets(db, min_sup, min_size)) == expected


@pytest.mark.parametrize("db", [SN_DB, CN_DB])
def test_bruteforce_agrees_on_example_data(db):
    assert mine_bruteforce(db, 2, 2) == mine_frequent_itemsets(db, 2, 2)


def test_bruteforce_bound():
    with pytest.raises(ValueError, match="bound"):
        mine_bruteforce([{f"i{k}" for k in range(21)}], 1)


def test_itemset_normalizes_items():
    assert FrequentItemset(("b", "a", "b"), 3).items == ("a", "b")
    with pytest.raises(ValueError):
        FrequentItemset((), 1)


def test_transaction_file_and_tsv(tmp_path):
    p = tmp_path / "t.txt"
    p.write_text("# header\na b\n\nb c\nb\n", encoding="utf-8")
    db = read_transactions(p)
    assert db == [{"a", "b"}, {"b", "c"}, {"b"}]
    assert format_itemsets(mine_frequent_itemsets(db, 1)) == "a\t1\nb\t3\nc\t1\na,b\t1\nb,c\t1\n"


def test_fixture_transaction_files_match_matrix():
    assert read_transactions(FIXTURES / "social_network.txt") == SN_DB
    assert read_transactions(FIXTURES / "computer_network.txt") == CN_DB


# --- properties -------------------------------------------------------------

_ITEMS = [chr(ord("a") + i) for i in range(12)]
_dbs = st.lists(st.frozensets(st.sampled_from(_ITEMS), max_size=12), max_size=30)


@settings(max_examples=25, deadline=None)
@given(_dbs, st.integers(1, 5), st.integers(0, 3), st.booleans())
def test_oracle_equivalence(db, min_sup, min_size, single_path):
    assert (mine_frequent_itemsets(db, min_sup, min_size, single_path=single_path)
            == mine_bruteforce(db, min_sup, min_size))


@settings(max_examples=30, deadline=None)
@given(_dbs, st.integers(1, 4))
def test_downward_closure(db, min_sup):
    found = {s.items: s.support for s in mine_frequent_itemsets(db, min_sup)}
    # immediate subsets suffice: closure follows by induction on size
    for items, sup in found.items():
        for sub in combinations(items, len(items) - 1):
            if sub:
                assert sub in found and found[sub] >= sup


@given(_dbs, st.integers(1, 4))
def test_header_chain_counts(db, min_sup):
    tree = build_fp_tree(db, min_sup)
    for item, entry in tree.header.items():
        assert sum(n.count for n in entry.nodes()) == entry.support == _support(db, {item})
        assert all(n.item == item for n in entry.nodes())


@given(_dbs, st.integers(1, 4))
def test_paths_follow_item_order(db, min_sup):
    tree = build_fp_tree(db, min_sup)
    for path in tree.paths():
        ranks = [tree.rank(n.item) for n in path]
        assert ranks == sorted(ranks) and len(set(ranks)) == len(ranks)
        assert all(a.count >= b.count for a, b in zip(path, path[1:]))


@given(_dbs, st.integers(1, 4))
def test_compression(db, min_sup):
    tree = build_fp_tree(db, min_sup)
    occurrences = sum(1 for t in db for it in t if it in tree.header)
    assert tree.node_count() <= occurrences


@settings(max_examples=20, deadline=None)
@given(_dbs, st.integers(1, 4), st.randoms())
def test_permutation_invariance(db, min_sup, rnd):
    shuffled = [frozenset(rnd.sample(sorted(t), len(t))) for t in db]
    rnd.shuffle(shuffled)
    assert mine_frequent_itemsets(shuffled, min_sup) == mine_frequent_itemsets(db, min_sup)
    assert dump_tree(build_fp_tree(shuffled, min_sup)).count("\n") == dump_tree(build_fp_tree(db, min_sup)).count("\n")
