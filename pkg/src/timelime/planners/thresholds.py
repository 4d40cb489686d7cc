"""Outlier-threshold planners: Alves, Shatnawi (VARL) and Oliveira.

Each learns one upper threshold per metric from the raw training release and
proposes moving any metric above its threshold into ``[0, threshold]``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from ..data import LOC_INDEX, NormalizationMap, Release
from ..learners import LogisticFit, fit_univariate_logistic
from .plan import Plan


@dataclass(frozen=True)
class ThresholdRules:
    planner: str
    thresholds: tuple[Optional[float], ...]
    # feature index -> reason it was dropped
    skipped: dict[int, str] = field(default_factory=dict)

    def apply(self, raw_instance: Sequence[float], nmap: NormalizationMap) -> Plan:
        changes = {}
        for f, t in enumerate(self.thresholds):
            if t is not None and raw_instance[f] > t:
                changes[f] = (0.0, nmap.transform_value(f, t))
        return Plan.from_changes(changes, len(self.thresholds), self.planner)


def logistic_fits(train: Release) -> list[Optional[LogisticFit]]:
    """One univariate fit per metric against the defect label (None if unfittable)."""
    X, y = train.matrix(), train.labels()
    fits = []
    for f in range(X.shape[1]):
        try:
            fits.append(fit_univariate_logistic(X[:, f], y))
        except ValueError:
            fits.append(None)
    return fits


def _significant(fit: Optional[LogisticFit], alpha: float = 0.05) -> bool:
    # separated fits report p = 0 and are kept
    return fit is not None and fit.p_value <= alpha


def weighted_threshold(values, weights, pct: float) -> float:
    """Smallest value whose cumulative normalized weight reaches ``pct``."""
    values = np.asarray(values, dtype=float)
    weights = np.asarray(weights, dtype=float)
    total = weights.sum()
    if total <= 0:
        raise ValueError("weights sum to zero")
    order = np.argsort(values, kind="stable")
    cum = np.cumsum(weights[order]) / total
    idx = int(np.searchsorted(cum, pct - 1e-12, side="left"))
    return float(values[order][min(idx, len(values) - 1)])


def alves_rules(train: Release, threshold_pct: float = 0.70,
                fits: Optional[list] = None) -> ThresholdRules:
    if not len(train):
        raise ValueError("empty training release")
    X = train.matrix()
    loc = X[:, LOC_INDEX]
    if loc.sum() <= 0:
        raise ValueError("LOC is zero for every record; cannot weight")
    fits = logistic_fits(train) if fits is None else fits
    thresholds, skipped = [], {}
    for f in range(X.shape[1]):
        if not _significant(fits[f]):
            thresholds.append(None)
            skipped[f] = "not significant"
            continue
        thresholds.append(weighted_threshold(X[:, f], loc, threshold_pct))
    return ThresholdRules("alves", tuple(thresholds), skipped)


def varl(alpha: float, beta: float, p0: float = 0.05) -> float:
    """Value of acceptable risk level: ``(ln(p0 / (1 - p0)) - alpha) / beta``."""
    if beta == 0:
        raise ZeroDivisionError("beta is zero")
    return (math.log(p0 / (1 - p0)) - alpha) / beta


def shatnawi_rules(train: Release, p0: float = 0.05,
                   fits: Optional[list] = None) -> ThresholdRules:
    X = train.matrix()
    fits = logistic_fits(train) if fits is None else fits
    thresholds, skipped = [], {}
    for f in range(X.shape[1]):
        fit = fits[f]
        if not _significant(fit):
            thresholds.append(None)
            skipped[f] = "not significant"
            continue
        if fit.beta == 0 or not math.isfinite(fit.beta):
            thresholds.append(None)
            skipped[f] = "beta is zero"
            continue
        t = varl(fit.alpha, fit.beta, p0)
        if not (0 < t < X[:, f].max()):
            thresholds.append(None)
            skipped[f] = "VARL outside observed range"
            continue
        thresholds.append(t)
    return ThresholdRules("shatnawi", tuple(thresholds), skipped)


@dataclass(frozen=True)
class OliveiraRule:
    p: int
    k: float
    penalty: float


P_GRID = tuple(range(10, 100, 10))


def oliveira_penalty(values, k: float, min_compliance: float = 0.90,
                     tail_pct: float = 90) -> float:
    values = np.asarray(values, dtype=float)
    compliance = float(np.mean(values <= k))
    tail = np.percentile(values, tail_pct, method="linear")
    tail_median = float(np.median(values[values >= tail]))
    span = values.max() - values.min()
    return max(0.0, min_compliance - compliance) + abs(k - tail_median) / span


def oliveira_rule(values, min_compliance: float = 0.90, tail_pct: float = 90) -> Optional[OliveiraRule]:
    """Best ``(p, k)`` over the percentage grid and observed values.

    A pair is admissible only if at least ``p`` percent of the classes have
    ``value <= k``. Lowest total penalty wins; ties prefer higher ``p`` then
    lower ``k``. Constant metrics return None.
    """
    values = np.asarray(values, dtype=float)
    if values.min() == values.max():
        return None
    best_key, best = None, None
    for k in np.unique(values):
        compliance = float(np.mean(values <= k))
        pen = oliveira_penalty(values, k, min_compliance, tail_pct)
        for p in P_GRID:
            if compliance < p / 100 - 1e-12:
                continue
            key = (round(pen, 12), -p, float(k))
            if best_key is None or key < best_key:
                best_key, best = key, OliveiraRule(p, float(k), pen)
    return best


def oliveira_rules(train: Release) -> tuple[ThresholdRules, list[Optional[OliveiraRule]]]:
    X = train.matrix()
    rules = [oliveira_rule(X[:, f]) for f in range(X.shape[1])]
    skipped = {f: "constant" for f, r in enumerate(rules) if r is None}
    thresholds = tuple(None if r is None else r.k for r in rules)
    return ThresholdRules("oliveira", thresholds, skipped), rules
