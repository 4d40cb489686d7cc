"""XTREE: frequent-pattern-guided decision tree over discretized metrics.

The plan is the set of bin conditions separating the instance's leaf from
the nearest leaf with a strictly lower defect probability.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..discretize import BinScheme
from .fpgrowth import fp_growth
from .plan import Plan


@dataclass
class Leaf:
    # (feature, bin) conditions along the root-to-leaf path
    conditions: tuple[tuple[int, int], ...]
    probability: float
    n: int

    @property
    def depth(self) -> int:
        return len(self.conditions)


@dataclass
class _Node:
    n: int
    probability: float
    conditions: tuple[tuple[int, int], ...]
    feature: Optional[int] = None
    children: dict = field(default_factory=dict)
    leaf_id: Optional[int] = None


def _entropy(y: np.ndarray) -> float:
    p = y.mean() if len(y) else 0.0
    if p in (0.0, 1.0):
        return 0.0
    return -(p * math.log2(p) + (1 - p) * math.log2(1 - p))


class XTree:
    """Multiway tree: a split on a feature opens one child per bin.

    Only features carrying an item of some maximal frequent ``(feature, bin)``
    itemset are split on, each at most once per path.
    """

    def __init__(self, bins: BinScheme, min_support_frac: float = 0.05,
                 min_split: Optional[int] = None, max_depth: int = 8):
        self.bins = bins
        self.min_support_frac = min_support_frac
        self.min_split = min_split
        self.max_depth = max_depth
        self.allowed: list[int] = []
        self.leaves: list[Leaf] = []
        self.root: Optional[_Node] = None

    def fit(self, X, y) -> "XTree":
        B = self.bins.bins_of(X)
        y = np.asarray(y, dtype=float)
        n = len(y)
        min_support = max(1, math.ceil(self.min_support_frac * n))
        transactions = [{(f, int(B[i, f])) for f in range(B.shape[1])} for i in range(n)]
        mfis = fp_growth(transactions, min_support)
        self.allowed = sorted({f for s in mfis for f, _ in s if self.bins.explainable(f)})
        min_split = self.min_split if self.min_split is not None else max(2, min_support)
        self.leaves = []
        self.root = self._grow(B, y, np.arange(n), (), min_split)
        return self

    def _grow(self, B, y, idx, conditions, min_split) -> _Node:
        prob = float(y[idx].mean()) if len(idx) else math.nan
        node = _Node(len(idx), prob, conditions)
        used = {f for f, _ in conditions}
        best_f, best_gain = None, 1e-12
        if len(idx) >= min_split and len(conditions) < self.max_depth and 0 < prob < 1:
            parent = _entropy(y[idx])
            for f in self.allowed:
                if f in used:
                    continue
                col = B[idx, f]
                rem = 0.0
                for b in np.unique(col):
                    part = y[idx[col == b]]
                    rem += len(part) / len(idx) * _entropy(part)
                gain = parent - rem
                if gain > best_gain:
                    best_f, best_gain = f, gain
        if best_f is None:
            node.leaf_id = len(self.leaves)
            self.leaves.append(Leaf(conditions, prob, len(idx)))
            return node
        node.feature = best_f
        col = B[idx, best_f]
        for b in range(self.bins.n_bins(best_f)):
            sub = idx[col == b]
            cond = conditions + ((best_f, b),)
            if len(sub):
                node.children[b] = self._grow(B, y, sub, cond, min_split)
            else:
                # unseen bin: empty leaf carrying the parent's estimate
                child = _Node(0, prob, cond, leaf_id=len(self.leaves))
                self.leaves.append(Leaf(cond, prob, 0))
                node.children[b] = child
        return node

    def leaf_of(self, instance) -> Leaf:
        b = self.bins.bins_of(instance)[0]
        node = self.root
        while node.feature is not None:
            node = node.children[int(b[node.feature])]
        return self.leaves[node.leaf_id]

    def plan(self, instance) -> Plan:
        n_features = self.bins.n_features
        if len(self.leaves) <= 1:
            return Plan.no_change(n_features, "xtree", flags=("single_leaf",))
        b = self.bins.bins_of(instance)[0]
        current = self.leaf_of(instance)
        target = nearest_better_leaf(self.leaves, current, b)
        if target is None:
            return Plan.no_change(n_features, "xtree")
        changes = {
            f: self.bins.interval(f, bin_)
            for f, bin_ in target.conditions
            if int(b[f]) != bin_
        }
        return Plan.from_changes(changes, n_features, "xtree")


def nearest_better_leaf(leaves, current: Leaf, instance_bins) -> Optional[Leaf]:
    """Leaf with strictly lower defect probability violating the fewest conditions.

    Ties: lower probability, then shallower, then earlier leaf. Empty leaves
    are never targets.
    """
    best_key, best = None, None
    for i, leaf in enumerate(leaves):
        if leaf.n == 0 or not leaf.probability < current.probability:
            continue
        diff = sum(1 for f, b in leaf.conditions if int(instance_bins[f]) != b)
        key = (diff, leaf.probability, leaf.depth, i)
        if best_key is None or key < best_key:
            best_key, best = key, leaf
    return best
