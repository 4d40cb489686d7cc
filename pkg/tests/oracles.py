"""Brute-force reference implementations, deliberately naive.

None of these import the code they check.
"""
from __future__ import annotations

import math
from itertools import chain, combinations


def _ent(labels):
    n = len(labels)
    if n == 0:
        return 0.0
    out = 0.0
    for c in set(labels):
        p = labels.count(c) / n
        out -= p * math.log2(p)
    return out


def mdlp_exhaustive(values, labels):
    """Recursive MDLP trying every midpoint between distinct values."""
    pairs = sorted(zip(values, labels))
    cuts = []

    def rec(pairs):
        labels = [l for _, l in pairs]
        n = len(pairs)
        if n < 2 or len(set(labels)) < 2:
            return
        distinct = sorted({v for v, _ in pairs})
        best = None
        for a, b in zip(distinct, distinct[1:]):
            cut = (a + b) / 2
            left = [l for v, l in pairs if v <= cut]
            right = [l for v, l in pairs if v > cut]
            e = (len(left) * _ent(left) + len(right) * _ent(right)) / n
            if best is None or e < best[0] - 1e-12:
                best = (e, cut, left, right)
        if best is None:
            return
        e, cut, left, right = best
        ent_s = _ent(labels)
        gain = ent_s - e
        k, k1, k2 = len(set(labels)), len(set(left)), len(set(right))
        delta = math.log2(3**k - 2) - (k * ent_s - k1 * _ent(left) - k2 * _ent(right))
        if gain <= (math.log2(n - 1) + delta) / n:
            return
        cuts.append(cut)
        rec([(v, l) for v, l in pairs if v <= cut])
        rec([(v, l) for v, l in pairs if v > cut])

    rec(pairs)
    return sorted(cuts)


def maximal_itemsets_bruteforce(transactions, min_support):
    transactions = [set(t) for t in transactions]
    universe = sorted(set().union(*transactions)) if transactions else []
    frequent = []
    for r in range(1, len(universe) + 1):
        for combo in combinations(universe, r):
            s = set(combo)
            if sum(1 for t in transactions if s <= t) >= min_support:
                frequent.append(frozenset(s))
    return {f for f in frequent if not any(f < g for g in frequent)}


def oliveira_grid(values, min_compliance=0.9, tail_pct=90):
    """Full (p, k) grid search, all observed values (duplicates included)."""
    import numpy as np

    vals = sorted(float(v) for v in values)
    n = len(vals)
    if vals[0] == vals[-1]:
        return None
    tail = float(np.percentile(vals, tail_pct))
    tail_vals = [v for v in vals if v >= tail]
    tail_vals.sort()
    m = len(tail_vals)
    med = tail_vals[m // 2] if m % 2 else (tail_vals[m // 2 - 1] + tail_vals[m // 2]) / 2
    span = vals[-1] - vals[0]
    best = None
    for p in range(10, 100, 10):
        for k in vals:
            comp = sum(1 for v in vals if v <= k) / n
            if comp * 100 < p - 1e-9:
                continue
            pen = max(0.0, min_compliance - comp) + abs(k - med) / span
            cand = (pen, p, k)
            if best is None:
                best = cand
                continue
            if pen < best[0] - 1e-12:
                best = cand
            elif abs(pen - best[0]) <= 1e-12 and (p > best[1] or (p == best[1] and k < best[2])):
                best = cand
    return best


def find_support_bruteforce(pool_dirs, itemsets, M):
    """pool_dirs: feature -> direction. Returns (feature tuple, support)."""
    feats = sorted(pool_dirs)
    subsets = chain.from_iterable(combinations(feats, r) for r in range(1, len(feats) + 1))
    best = ((), 0)
    best_key = None
    for sub in subsets:
        if len(sub) > M or any(pool_dirs[f] == 0 for f in sub):
            continue
        need = {(f, pool_dirs[f]) for f in sub}
        sup = sum(1 for s in itemsets if need <= set(s))
        if sup == 0:
            continue
        key = (-len(sub), -sup, sub)
        if best_key is None or key < best_key:
            best_key, best = key, (sub, sup)
    return best


def verdicts_oracle(plan_intervals, y, z, changed):
    out = []
    for iv, yv, zv, ch in zip(plan_intervals, y, z, changed):
        if iv is None:
            out.append("FN" if ch else "TN")
        elif iv[0] <= zv <= iv[1]:
            out.append("TP")
        else:
            out.append("FP")
    return out
