"""Maximal frequent itemset mining over an FP-tree (FPMax-style search).

Single-path conditional trees are emitted whole and branches already covered
by a known maximal itemset are pruned, so the full (possibly exponential) set
of frequent itemsets is never enumerated.
"""
from __future__ import annotations

from collections import defaultdict
from typing import Hashable, Iterable


class _Node:
    __slots__ = ("item", "count", "parent", "children")

    def __init__(self, item, parent):
        self.item = item
        self.count = 0
        self.parent = parent
        self.children = {}


class _Tree:
    def __init__(self, weighted_paths, min_support, rank):
        counts = defaultdict(int)
        for path, c in weighted_paths:
            for item in path:
                counts[item] += c
        self.items = [i for i in counts if counts[i] >= min_support]
        self.items.sort(key=lambda i: (-counts[i], rank[i]))
        order = {i: n for n, i in enumerate(self.items)}
        self.counts = counts
        self.root = _Node(None, None)
        self.header = defaultdict(list)
        for path, c in weighted_paths:
            kept = sorted((i for i in path if i in order), key=order.__getitem__)
            node = self.root
            for item in kept:
                child = node.children.get(item)
                if child is None:
                    child = _Node(item, node)
                    node.children[item] = child
                    self.header[item].append(child)
                child.count += c
                node = child

    def single_path(self):
        path, node = [], self.root
        while node.children:
            if len(node.children) > 1:
                return None
            node = next(iter(node.children.values()))
            path.append(node.item)
        return path

    def prefix_paths(self, item):
        for node in self.header[item]:
            path, p = [], node.parent
            while p.item is not None:
                path.append(p.item)
                p = p.parent
            yield path, node.count


def fp_growth(transactions: Iterable[Iterable[Hashable]], min_support: int) -> list[frozenset]:
    """Maximal itemsets with support >= ``min_support`` (absolute count).

    Output is sorted by (descending size, sorted item repr) for stable order.
    """
    if min_support < 1:
        raise ValueError("min_support must be >= 1")
    transactions = [frozenset(t) for t in transactions]
    rank: dict = {}
    for t in transactions:
        for i in sorted(t, key=repr):
            rank.setdefault(i, len(rank))

    maximal: list[frozenset] = []

    def covered(itemset: frozenset) -> bool:
        return any(itemset <= m for m in maximal)

    def add(itemset: frozenset):
        if not itemset or covered(itemset):
            return
        maximal[:] = [m for m in maximal if not m < itemset]
        maximal.append(itemset)

    def mine(tree: _Tree, head: frozenset):
        path = tree.single_path()
        if path is not None:
            add(head | frozenset(path))
            return
        # least frequent first
        for item in reversed(tree.items):
            new_head = head | {item}
            base = list(tree.prefix_paths(item))
            tail_counts = defaultdict(int)
            for p, c in base:
                for i in p:
                    tail_counts[i] += c
            tail = {i for i, c in tail_counts.items() if c >= min_support}
            if covered(new_head | tail):
                continue
            if not tail:
                add(new_head)
                continue
            mine(_Tree(base, min_support, rank), new_head)

    mine(_Tree([(t, 1) for t in transactions], min_support, rank), frozenset())
    return sorted(maximal, key=lambda s: (-len(s), sorted(map(repr, s))))


def support(transactions: Iterable[Iterable[Hashable]], itemset: Iterable[Hashable]) -> int:
    s = frozenset(itemset)
    return sum(1 for t in transactions if s <= set(t))
