"""Plan scoring against the changes observed in the following release."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .discretize import BinScheme
from .planners.plan import Plan

OVERLAP_MODES = ("table5", "jaccard")


@dataclass(frozen=True)
class OverlapScore:
    score: float
    verdicts: tuple[str, ...]

    def count(self, kind: str) -> int:
        return self.verdicts.count(kind)

    @property
    def tp(self) -> int:
        return self.count("TP")

    @property
    def tn(self) -> int:
        return self.count("TN")

    @property
    def fp(self) -> int:
        return self.count("FP")

    @property
    def fn(self) -> int:
        return self.count("FN")


def _changed(f: int, y_val: float, z_val: float, bins: Optional[BinScheme]) -> bool:
    if bins is None:
        return not np.isclose(y_val, z_val, rtol=0.0, atol=1e-12)
    return bins.bin_of(f, y_val) != bins.bin_of(f, z_val)


def overlap(plan: Plan, y_instance: Sequence[float], z_instance: Sequence[float],
            bins: Optional[BinScheme] = None, mode: str = "table5") -> OverlapScore:
    """Per-feature verdicts and the overlap percentage.

    A moved feature is TP when the next-release value lands in its target
    interval, FP otherwise. A kept feature is TN when it did not change
    (same bin if ``bins`` is given, same value otherwise), FN when it did.

    ``table5`` scores matches over all features. ``jaccard`` scores TP over
    the union of planned and changed features (100 when both are empty).
    """
    verdicts = []
    changed = []
    for f, iv in enumerate(plan.intervals):
        yv, zv = float(y_instance[f]), float(z_instance[f])
        ch = _changed(f, yv, zv, bins)
        changed.append(ch)
        if iv is None:
            verdicts.append("FN" if ch else "TN")
        else:
            verdicts.append("TP" if iv[0] <= zv <= iv[1] else "FP")
    n = len(verdicts)
    if mode == "table5":
        hits = sum(v in ("TP", "TN") for v in verdicts)
        score = 100.0 * hits / n if n else 100.0
    elif mode == "jaccard":
        union = sum(1 for f in range(n) if plan.intervals[f] is not None or changed[f])
        score = 100.0 * verdicts.count("TP") / union if union else 100.0
    else:
        raise ValueError(f"unknown overlap mode {mode!r}")
    return OverlapScore(score, tuple(verdicts))


def weighted_scores(s: Sequence[float], n: Sequence[float]) -> tuple[float, Optional[float]]:
    """NDPV weighted by overlap (``S``) and its project-scaled form.

    ``s`` are overlap fractions in [0, 1]; the scaled score is None when the
    NDPVs sum to zero.
    """
    s = np.asarray(s, dtype=float)
    n = np.asarray(n, dtype=float)
    if len(s) != len(n):
        raise ValueError("s and n differ in length")
    if not len(s):
        raise ValueError("need at least one file")
    total = float(np.dot(s, n))
    denom = float(n.sum())
    return total, (total / denom if denom != 0 else None)


def precision_recall(tp: int, fp: int, fn: int) -> tuple[Optional[float], Optional[float]]:
    """Precision and recall in percent; None for a zero denominator."""
    if min(tp, fp, fn) < 0:
        raise ValueError("counts must be non-negative")
    precision = 100.0 * tp / (tp + fp) if tp + fp else None
    recall = 100.0 * tp / (tp + fn) if tp + fn else None
    return precision, recall


def iqr(values) -> float:
    q75, q25 = np.percentile(np.asarray(values, dtype=float), [75, 25])
    return float(q75 - q25)
