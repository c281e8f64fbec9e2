"""FP-tree construction and FP-growth frequent itemset mining.

Supports are absolute transaction counts.  Frequent items are ordered by
descending support with ties broken lexicographically, so trees, dumps and
mined sets are fully deterministic.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "ROOT",
    "FPNode",
    "FPTree",
    "FrequentItemset",
    "TransactionDB",
    "build_fp_tree",
    "mine_frequent_itemsets",
    "mine_bruteforce",
    "dump_tree",
    "read_transactions",
    "format_itemsets",
]

ROOT = "ROOT"
BRUTEFORCE_MAX_ITEMS = 20

TransactionDB = Sequence[Iterable[str]]


class FPNode:
    __slots__ = ("item", "count", "parent", "children", "node_link")

    def __init__(self, item: str, count: int = 0, parent: FPNode | None = None):
        self.item = item
        self.count = count
        self.parent = parent
        self.children: dict[str, FPNode] = {}
        self.node_link: FPNode | None = None

    def __repr__(self):
        return f"FPNode({self.item!r}, {self.count})"

    def prefix_path(self) -> list[str]:
        """Items from just below the root down to this node's parent."""
        path = []
        node = self.parent
        while node is not None and node.parent is not None:
            path.append(node.item)
            node = node.parent
        path.reverse()
        return path


@dataclass
class HeaderEntry:
    support: int
    head: FPNode | None = None
    tail: FPNode | None = field(default=None, repr=False)

    def nodes(self) -> Iterator[FPNode]:
        node = self.head
        while node is not None:
            yield node
            node = node.node_link


@dataclass
class FPTree:
    root: FPNode
    header: dict[str, HeaderEntry]
    item_order: list[str]

    @property
    def is_empty(self) -> bool:
        return not self.root.children

    def rank(self, item: str) -> int:
        return self._rank[item]

    def __post_init__(self):
        self._rank = {item: i for i, item in enumerate(self.item_order)}

    def node_count(self) -> int:
        stack, n = list(self.root.children.values()), 0
        while stack:
            node = stack.pop()
            n += 1
            stack.extend(node.children.values())
        return n

    def paths(self) -> Iterator[list[FPNode]]:
        """Every root-to-leaf path (root excluded)."""
        def walk(node, acc):
            if not node.children:
                if acc:
                    yield acc
                return
            for child in node.children.values():
                yield from walk(child, acc + [child])
        yield from walk(self.root, [])


@dataclass(frozen=True, order=True)
class FrequentItemset:
    items: tuple[str, ...]
    support: int

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(sorted(set(self.items))))
        if not self.items:
            raise ValueError("itemset must be nonempty")

    @property
    def size(self) -> int:
        return len(self.items)

    def sort_key(self):
        return (len(self.items), ",".join(self.items))


def _item_order(supports: dict[str, int]) -> list[str]:
    return sorted(supports, key=lambda it: (-supports[it], it))


def _build_weighted(weighted: Iterable[tuple[Sequence[str], int]], min_sup: int) -> FPTree:
    weighted = list(weighted)
    counts: dict[str, int] = defaultdict(int)
    for items, w in weighted:
        for it in set(items):
            counts[it] += w
    frequent = {it: c for it, c in counts.items() if c >= min_sup}
    order = _item_order(frequent)
    rank = {it: i for i, it in enumerate(order)}
    header = {it: HeaderEntry(frequent[it]) for it in order}
    root = FPNode(ROOT)
    for items, w in weighted:
        sel = sorted({it for it in items if it in rank}, key=rank.__getitem__)
        _insert_tree(sel, root, header, w)
    return FPTree(root, header, order)


def _insert_tree(items: list[str], node: FPNode, header: dict[str, HeaderEntry], count: int):
    # Iterative form of insert_tree([e | E_list], T).
    for item in items:
        child = node.children.get(item)
        if child is None:
            child = FPNode(item, 0, node)
            node.children[item] = child
            entry = header[item]
            if entry.tail is None:
                entry.head = child
            else:
                entry.tail.node_link = child
            entry.tail = child
        child.count += count
        node = child


def build_fp_tree(db: TransactionDB, min_sup: int) -> FPTree:
    if min_sup < 1:
        raise ValueError("min_sup must be >= 1")
    return _build_weighted(((t, 1) for t in db), min_sup)


def _single_prefix(tree: FPTree) -> tuple[list[FPNode], FPNode]:
    """Split off the non-branching chain hanging from the root."""
    path, node = [], tree.root
    while len(node.children) == 1:
        node = next(iter(node.children.values()))
        path.append(node)
    return path, node


def _subtree_base(top: FPNode) -> list[tuple[list[str], int]]:
    """Weighted transactions equivalent to the subtree below ``top``."""
    base = []
    stack = [(child, [child.item]) for child in top.children.values()]
    while stack:
        node, path = stack.pop()
        rest = node.count - sum(c.count for c in node.children.values())
        if rest > 0:
            base.append((path, rest))
        stack.extend((c, path + [c.item]) for c in node.children.values())
    return base


def _fp_growth(tree: FPTree, suffix: frozenset[str], min_sup: int, single_path: bool) -> dict[frozenset[str], int]:
    p_patterns: dict[frozenset[str], int] = {}
    q_tree = tree
    if single_path:
        path, branch = _single_prefix(tree)
        if path:
            for r in range(1, len(path) + 1):
                for combo in combinations(path, r):
                    beta = suffix.union(n.item for n in combo)
                    p_patterns[beta] = min(n.count for n in combo)
            if branch.children:
                q_tree = _build_weighted(_subtree_base(branch), min_sup)
            else:
                return p_patterns

    q_patterns: dict[frozenset[str], int] = {}
    for item in reversed(q_tree.item_order):
        entry = q_tree.header[item]
        beta = suffix | {item}
        q_patterns[beta] = entry.support
        base = [(node.prefix_path(), node.count) for node in entry.nodes()]
        cond = _build_weighted(base, min_sup)
        if not cond.is_empty:
            q_patterns.update(_fp_growth(cond, beta, min_sup, single_path))

    if not p_patterns:
        return q_patterns
    # P x Q: every Q pattern lies under the whole prefix path, so its
    # support never exceeds that of a P node.
    out = dict(p_patterns)
    out.update(q_patterns)
    for p_set, p_sup in p_patterns.items():
        for q_set, q_sup in q_patterns.items():
            out[p_set | q_set] = min(p_sup, q_sup)
    return out


def mine_frequent_itemsets(
    db: TransactionDB,
    min_sup: int,
    min_size: int = 1,
    *,
    single_path: bool = True,
) -> set[FrequentItemset]:
    """All itemsets with support >= ``min_sup`` and size >= ``max(min_size, 1)``.

    ``single_path=False`` disables the single-prefix-path shortcut; the
    result is identical either way.
    """
    tree = build_fp_tree(db, min_sup)
    if tree.is_empty:
        return set()
    found = _fp_growth(tree, frozenset(), min_sup, single_path)
    min_size = max(min_size, 1)
    return {
        FrequentItemset(tuple(items), sup)
        for items, sup in found.items()
        if len(items) >= min_size and sup >= min_sup
    }


def mine_bruteforce(db: TransactionDB, min_sup: int, min_size: int = 1) -> set[FrequentItemset]:
    """Exhaustive subset enumeration; the reference the miner is checked against."""
    if min_sup < 1:
        raise ValueError("min_sup must be >= 1")
    db = [set(t) for t in db]
    universe = sorted(set().union(*db)) if db else []
    n = len(universe)
    if n > BRUTEFORCE_MAX_ITEMS:
        raise ValueError(f"item universe of {n} exceeds brute-force bound {BRUTEFORCE_MAX_ITEMS}")
    if n == 0:
        return set()
    bit = {it: 1 << i for i, it in enumerate(universe)}
    tmasks = np.array([sum(bit[it] for it in t) for t in db], dtype=np.int64)
    min_size = max(min_size, 1)
    out = set()
    chunk = 1 << 14
    for start in range(1, 1 << n, chunk):
        masks = np.arange(start, min(start + chunk, 1 << n), dtype=np.int64)
        support = ((tmasks[None, :] & masks[:, None]) == masks[:, None]).sum(axis=1)
        for mask, sup in zip(masks[support >= min_sup].tolist(), support[support >= min_sup].tolist()):
            items = tuple(it for it in universe if mask & bit[it])
            if len(items) >= min_size:
                out.add(FrequentItemset(items, int(sup)))
    return out


def dump_tree(tree: FPTree) -> str:
    lines = [ROOT]

    def walk(node: FPNode, depth: int):
        for child in sorted(node.children.values(), key=lambda c: tree.rank(c.item)):
            lines.append(f"{'  ' * depth}{child.item}:{child.count}")
            walk(child, depth + 1)

    walk(tree.root, 1)
    return "\n".join(lines)


def read_transactions(path: str | Path) -> list[frozenset[str]]:
    with open(path, encoding="utf-8") as fh:
        return [
            frozenset(line.split())
            for line in fh
            if line.strip() and not line.startswith("#")
        ]


def format_itemsets(itemsets: Iterable[FrequentItemset]) -> str:
    """TSV rows ``items<TAB>support`` sorted by (size, items)."""
    rows = sorted(itemsets, key=FrequentItemset.sort_key)
    return "".join(f"{','.join(s.items)}\t{s.support}\n" for s in rows)
