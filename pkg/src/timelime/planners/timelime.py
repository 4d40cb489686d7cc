"""Precedence-restricted LIME planning.

Features are ranked by how much they shifted between the two historical
releases (Hedges' g); only the top ``M`` may be changed, and the returned plan
must match changes actually observed between those releases.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping

import numpy as np

from ..discretize import BinScheme
from ..explain import Explanation
from .plan import Interval, Plan, flip, flip_direction


@dataclass(frozen=True)
class FeatureShift:
    g: np.ndarray
    m1: np.ndarray
    m2: np.ndarray
    s1: np.ndarray
    s2: np.ndarray
    n1: int
    n2: int

    @property
    def defined(self) -> np.ndarray:
        return np.isfinite(self.g)


def pooled_sd(s1, s2, n1: int, n2: int):
    return np.sqrt(((n1 - 1) * np.square(s1) + (n2 - 1) * np.square(s2)) / (n1 + n2 - 2))


def hedge_g(X1, X2) -> FeatureShift:
    """Per-column ``(mean1 - mean2) / S_pooled``; NaN where S_pooled is 0."""
    X1 = np.atleast_2d(np.asarray(X1, dtype=float))
    X2 = np.atleast_2d(np.asarray(X2, dtype=float))
    n1, n2 = len(X1), len(X2)
    if n1 < 2 or n2 < 2:
        raise ValueError("each release needs at least two records")
    m1, m2 = X1.mean(axis=0), X2.mean(axis=0)
    s1, s2 = X1.std(axis=0, ddof=1), X2.std(axis=0, ddof=1)
    sp = pooled_sd(s1, s2, n1, n2)
    # rounding leaves ~1e-17 spread on constant columns
    ok = sp > 1e-12 * np.maximum(1.0, np.maximum(np.abs(m1), np.abs(m2)))
    with np.errstate(divide="ignore", invalid="ignore"):
        g = np.where(ok, (m1 - m2) / np.where(ok, sp, 1.0), np.nan)
    return FeatureShift(g, m1, m2, s1, s2, n1, n2)


def precedented_features(shift: FeatureShift, M: int = 5) -> list[int]:
    """Top-``M`` features by |g|; undefined g ranks last, ties by index."""
    if M < 1:
        raise ValueError("M must be >= 1")
    mag = [abs(v) if math.isfinite(v) else -math.inf for v in shift.g]
    order = sorted(range(len(mag)), key=lambda f: (-mag[f], f))
    return sorted(order[:M])


@dataclass(frozen=True)
class ChangeHistory:
    """One itemset of ``(feature, direction)`` pairs per file seen in both releases."""

    itemsets: tuple[frozenset, ...]

    def support(self, items: Iterable[tuple[int, int]]) -> int:
        wanted = frozenset(items)
        return sum(1 for s in self.itemsets if wanted <= s)


def build_history(X_old, X_new, bins: BinScheme) -> ChangeHistory:
    """Bin-level change directions between aligned rows of two releases."""
    b_old = bins.bins_of(X_old)
    b_new = bins.bins_of(X_new)
    diff = np.sign(b_new - b_old)
    itemsets = tuple(
        frozenset((int(f), int(diff[i, f])) for f in np.flatnonzero(diff[i]))
        for i in range(len(diff))
    )
    return ChangeHistory(itemsets)


def history_for_releases(x, y, nmap, bins: BinScheme) -> ChangeHistory:
    """History over every file name present in both releases (order of ``y``)."""
    xi = x.index()
    common = [n for n in y.names if n in xi]
    yi = y.index()
    X_old = nmap.transform([xi[n].metrics for n in common]) if common else np.empty((0, len(bins.cuts)))
    X_new = nmap.transform([yi[n].metrics for n in common]) if common else np.empty((0, len(bins.cuts)))
    return build_history(X_old, X_new, bins)


def find_support(pool: Mapping[int, tuple[Interval, Interval]], precedented: Iterable[int],
                 history: ChangeHistory, M: int = 5, n_features: int = 20,
                 flip_mode: str = "mirror") -> Plan:
    """Largest plan over pool features with precedent in the change history.

    ``pool`` maps feature -> (current interval, proposed interval). For
    ``m = M .. 1`` every ``m``-subset is scored by the number of history
    itemsets containing all of its ``(feature, direction)`` pairs; the first
    ``m`` with a positive maximum wins, ties going to the lexicographically
    smallest feature set. With no supported subset the plan is empty.
    """
    precedented = set(precedented)
    stray = set(pool) - precedented
    if stray:
        raise ValueError(f"pool features {sorted(stray)} are not precedented")
    if not history.itemsets:
        return Plan.no_change(n_features, "timelime", flags=("empty_history",))

    direction = {f: flip_direction(cur, flip_mode) for f, (cur, _) in pool.items()}
    feats = sorted(pool)
    for m in range(min(M, len(feats)), 0, -1):
        best, best_set = 0, None
        for combo in combinations(feats, m):
            if any(direction[f] == 0 for f in combo):
                continue
            s = history.support((f, direction[f]) for f in combo)
            if s > best:
                best, best_set = s, combo
        if best > 0:
            changes = {f: pool[f][1] for f in best_set}
            return Plan.from_changes(changes, n_features, "timelime", support=best)
    return Plan.no_change(n_features, "timelime")


def timelime_plan(e: Explanation, precedented: Iterable[int], history: ChangeHistory,
                  M: int = 5, flip_mode: str = "mirror") -> Plan:
    precedented = set(precedented)
    pool = {
        en.feature: (en.interval, flip(en.interval, flip_mode))
        for en in e.entries
        if en.weight >= 0 and en.feature in precedented
    }
    return find_support(pool, precedented, history, M, len(e.instance), flip_mode)
