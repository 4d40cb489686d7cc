"""Scott-Knott ranking with a bootstrap significance test and Cliff's delta."""
from __future__ import annotations

import math
from typing import Mapping, Sequence

import numpy as np

SMALL_EFFECT = 0.147


def cliffs_delta(a: Sequence[float], b: Sequence[float]) -> float:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    gt = (a[:, None] > b[None, :]).sum()
    lt = (a[:, None] < b[None, :]).sum()
    return float(gt - lt) / (len(a) * len(b))


def _t_stat(a: np.ndarray, b: np.ndarray) -> float:
    diff = abs(a.mean() - b.mean())
    se = math.sqrt(a.var(ddof=1) / len(a) + b.var(ddof=1) / len(b)) if min(len(a), len(b)) > 1 else 0.0
    if se == 0:
        return math.inf if diff > 0 else 0.0
    return diff / se


def bootstrap_differ(a, b, n_boot: int = 512, alpha: float = 0.05, seed: int = 0) -> bool:
    """Two-sample bootstrap test on the difference of means.

    Both samples are shifted to the pooled mean (null hypothesis) and
    resampled; the observed statistic is significant if fewer than
    ``alpha * n_boot`` resamples reach it.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    observed = _t_stat(a, b)
    if observed == 0:
        return False
    pooled = np.concatenate([a, b]).mean()
    a0 = a - a.mean() + pooled
    b0 = b - b.mean() + pooled
    rng = np.random.default_rng(seed)
    hits = 0
    for _ in range(n_boot):
        ra = a0[rng.integers(0, len(a0), len(a0))]
        rb = b0[rng.integers(0, len(b0), len(b0))]
        if _t_stat(ra, rb) >= observed:
            hits += 1
    return hits / n_boot < alpha


def scott_knott_rank(groups: Mapping[str, Sequence[float]], n_boot: int = 512,
                     alpha: float = 0.05, small: float = SMALL_EFFECT,
                     seed: int = 0) -> dict[str, int]:
    """Rank groups (1 = best, highest mean) by recursive best bi-partition.

    A split is kept only when the two sides differ under the bootstrap test
    and Cliff's delta is at least ``small``.
    """
    if not groups:
        return {}
    # stable: ties in mean keep insertion order
    names = sorted(groups, key=lambda k: -float(np.mean(groups[k])))
    data = [np.asarray(groups[k], dtype=float) for k in names]
    ranks: dict[str, int] = {}

    def flat(lo, hi):
        return np.concatenate(data[lo:hi])

    def recurse(lo: int, hi: int, rank: int) -> int:
        if hi - lo > 1:
            everything = flat(lo, hi)
            mu = everything.mean()
            best, cut = -1.0, None
            for i in range(lo + 1, hi):
                left, right = flat(lo, i), flat(i, hi)
                ss = len(left) * (left.mean() - mu) ** 2 + len(right) * (right.mean() - mu) ** 2
                if ss > best + 1e-12:
                    best, cut = ss, i
            if cut is not None:
                left, right = flat(lo, cut), flat(cut, hi)
                if (abs(cliffs_delta(left, right)) >= small
                        and bootstrap_differ(left, right, n_boot, alpha, seed)):
                    rank = recurse(lo, cut, rank)
                    return recurse(cut, hi, rank + 1)
        for k in names[lo:hi]:
            ranks[k] = rank
        return rank

    recurse(0, len(names), 1)
    return ranks
