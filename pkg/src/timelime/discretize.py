"""Supervised (Fayyad-Irani MDLP) and quartile discretization on [0, 1]."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


def _entropy(counts: np.ndarray) -> float:
    n = counts.sum()
    if n == 0:
        return 0.0
    p = counts[counts > 0] / n
    return float(-(p * np.log2(p)).sum())


def mdl_accepts(parent: np.ndarray, left: np.ndarray, right: np.ndarray) -> bool:
    """MDLP stopping rule for one binary split, given per-class counts."""
    n = parent.sum()
    ent, ent1, ent2 = _entropy(parent), _entropy(left), _entropy(right)
    k, k1, k2 = (int((c > 0).sum()) for c in (parent, left, right))
    gain = ent - (left.sum() * ent1 + right.sum() * ent2) / n
    delta = math.log2(3**k - 2) - (k * ent - k1 * ent1 - k2 * ent2)
    return gain > (math.log2(n - 1) + delta) / n


def fayyad_irani(values, labels) -> list[float]:
    """Recursive minimum-entropy binary splitting with the MDL stopping rule.

    Only boundary points are tried: midpoints between adjacent distinct
    values whose label groups are not both pure in the same class. Among
    equal-entropy candidates the smallest cut wins.
    """
    values = np.asarray(values, dtype=float)
    labels = np.asarray(labels)
    if len(values) != len(labels):
        raise ValueError("values and labels differ in length")
    if len(values) < 2:
        raise ValueError("need at least two values")
    classes, y = np.unique(labels, return_inverse=True)
    if len(classes) < 2:
        return []

    distinct, inverse = np.unique(values, return_inverse=True)
    # per distinct value, class counts
    counts = np.zeros((len(distinct), len(classes)), dtype=np.int64)
    np.add.at(counts, (inverse, y), 1)

    cuts: list[float] = []

    def split(lo: int, hi: int):
        # distinct-value groups lo..hi-1
        if hi - lo < 2:
            return
        block = counts[lo:hi]
        parent = block.sum(axis=0)
        if (parent > 0).sum() < 2:
            return
        n = parent.sum()
        cum = np.cumsum(block, axis=0)
        best, best_i = math.inf, -1
        for i in range(hi - lo - 1):
            a, b = block[i], block[i + 1]
            a_pure = (a > 0).sum() == 1
            b_pure = (b > 0).sum() == 1
            if a_pure and b_pure and np.argmax(a) == np.argmax(b):
                continue
            left = cum[i]
            right = parent - left
            e = (left.sum() * _entropy(left) + right.sum() * _entropy(right)) / n
            if e < best - 1e-12:
                best, best_i = e, i
        if best_i < 0:
            return
        left = cum[best_i]
        if not mdl_accepts(parent, left, parent - left):
            return
        mid = lo + best_i + 1
        cuts.append(float((distinct[mid - 1] + distinct[mid]) / 2))
        split(lo, mid)
        split(mid, hi)

    split(0, len(distinct))
    return sorted(cuts)


def quartile_cuts(values) -> list[float]:
    """25th/50th/75th percentiles (linear interpolation), duplicates collapsed."""
    values = np.asarray(values, dtype=float)
    if len(values) < 4:
        raise ValueError("need at least four values")
    if values.min() == values.max():
        return []
    qs = np.percentile(values, [25, 50, 75], method="linear")
    return sorted({float(q) for q in qs})


@dataclass(frozen=True)
class BinScheme:
    """Sorted cut points per feature over [0, 1].

    With ``c`` cuts a feature has ``c + 1`` bins; bin ``b`` spans
    ``[cuts[b-1], cuts[b]]`` with 0 and 1 as outer edges. A value equal to a
    cut belongs to the lower bin.
    """

    cuts: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        for c in self.cuts:
            if any(b <= a for a, b in zip(c, c[1:])):
                raise ValueError("cut points must be strictly increasing")

    @property
    def n_features(self) -> int:
        return len(self.cuts)

    def n_bins(self, feature: int) -> int:
        return len(self.cuts[feature]) + 1

    def explainable(self, feature: int) -> bool:
        return len(self.cuts[feature]) > 0

    def bin_of(self, feature: int, value: float) -> int:
        return int(np.searchsorted(self.cuts[feature], value, side="left"))

    def bins_of(self, X) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        out = np.empty(X.shape, dtype=np.int64)
        for f, c in enumerate(self.cuts):
            out[:, f] = np.searchsorted(c, X[:, f], side="left")
        return out

    def interval(self, feature: int, b: int) -> tuple[float, float]:
        c = self.cuts[feature]
        if not 0 <= b <= len(c):
            raise IndexError(f"feature {feature} has no bin {b}")
        lo = 0.0 if b == 0 else c[b - 1]
        hi = 1.0 if b == len(c) else c[b]
        return (lo, hi)

    def interval_of(self, feature: int, value: float) -> tuple[float, float]:
        return self.interval(feature, self.bin_of(feature, value))


def fit_bins(X, y, fallback: bool = True) -> BinScheme:
    """MDLP cuts per feature, quartiles where MDLP finds none."""
    X = np.asarray(X, dtype=float)
    cuts = []
    for f in range(X.shape[1]):
        c = fayyad_irani(X[:, f], y)
        if not c and fallback and len(X) >= 4:
            c = quartile_cuts(X[:, f])
        cuts.append(tuple(c))
    return BinScheme(tuple(cuts))
