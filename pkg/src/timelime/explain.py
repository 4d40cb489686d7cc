"""Tabular LIME over discretized features.

Samples are drawn bin-wise from the training bin frequencies, represented as
"same bin as the instance" indicators, weighted by an exponential kernel on
indicator-space distance, and fit with weighted least squares on the defect
probability returned by the black box.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from sklearn.linear_model import lars_path

from .discretize import BinScheme


class ContractError(ValueError):
    pass


@dataclass(frozen=True)
class LimeConfig:
    n_samples: int = 5000
    kernel_width: float = 0.75 * math.sqrt(20)
    k_features: int = 20
    seed: int = 0

    def __post_init__(self):
        if self.n_samples < 1:
            raise ValueError("n_samples must be >= 1")
        if self.kernel_width <= 0:
            raise ValueError("kernel_width must be positive")
        if self.k_features < 1:
            raise ValueError("k_features must be >= 1")


@dataclass(frozen=True)
class ExplanationEntry:
    feature: int
    weight: float
    interval: tuple[float, float]


@dataclass(frozen=True)
class Explanation:
    entries: tuple[ExplanationEntry, ...]
    instance: tuple[float, ...]
    predicted_label: bool
    probability: float
    intercept: float = 0.0

    @property
    def empty(self) -> bool:
        return not self.entries

    def weights(self, n_features: int | None = None) -> np.ndarray:
        n = len(self.instance) if n_features is None else n_features
        w = np.zeros(n)
        for e in self.entries:
            w[e.feature] = e.weight
        return w

    def to_json(self, feature_names=None) -> list[dict]:
        name = (lambda f: feature_names[f]) if feature_names else (lambda f: f)
        return [
            {"feature": name(e.feature), "weight": e.weight, "interval": list(e.interval)}
            for e in self.entries
        ]


@dataclass(frozen=True)
class TrainStats:
    """Per-feature bin frequencies of the training data."""

    bin_freqs: tuple[np.ndarray, ...]

    @classmethod
    def from_data(cls, X, bins: BinScheme) -> "TrainStats":
        B = bins.bins_of(X)
        freqs = []
        for f in range(bins.n_features):
            counts = np.bincount(B[:, f], minlength=bins.n_bins(f)).astype(float)
            freqs.append(counts / counts.sum())
        return cls(tuple(freqs))


def _as_defect_prob(model) -> Callable[[np.ndarray], np.ndarray]:
    fn = model.predict_proba if hasattr(model, "predict_proba") else model

    def prob(X):
        out = np.asarray(fn(X), dtype=float)
        if out.ndim == 2:
            out = out[:, -1]
        if np.any(~np.isfinite(out)) or out.min() < -1e-9 or out.max() > 1 + 1e-9:
            raise ContractError("black box returned values outside [0, 1]")
        return out

    return prob


def forward_lasso_order(Z, target, sample_weight, k: int) -> list[int]:
    """Columns in the order they enter a weighted lasso path, first ``k`` kept."""
    sw = np.sqrt(sample_weight)
    Zc = Z - np.average(Z, axis=0, weights=sample_weight)
    tc = target - np.average(target, weights=sample_weight)
    _, active, _ = lars_path(Zc * sw[:, None], tc * sw, method="lasso")
    order = [int(a) for a in active]
    for j in range(Z.shape[1]):
        if j not in order:
            order.append(j)
    return order[:k]


def weighted_least_squares(Z, target, sample_weight) -> tuple[float, np.ndarray]:
    """Weighted OLS with intercept; minimum-norm solution if rank deficient."""
    sw = np.sqrt(sample_weight)
    A = np.column_stack([np.ones(len(Z)), Z]) * sw[:, None]
    coef, *_ = np.linalg.lstsq(A, target * sw, rcond=None)
    return float(coef[0]), coef[1:]


def explain_instance(model, instance, bins: BinScheme, train_stats: TrainStats,
                     config: LimeConfig = LimeConfig()) -> Explanation:
    instance = np.asarray(instance, dtype=float)
    prob = _as_defect_prob(model)
    rng = np.random.default_rng(config.seed)
    n, d = config.n_samples, len(instance)
    features = [f for f in range(d) if bins.explainable(f)]

    p0 = float(prob(instance[None, :])[0])
    if not features:
        return Explanation((), tuple(instance), p0 >= 0.5, p0)

    inst_bins = bins.bins_of(instance)[0]
    values = np.tile(instance, (n, 1))
    same = np.ones((n, len(features)))
    for j, f in enumerate(features):
        freq = train_stats.bin_freqs[f]
        drawn = rng.choice(len(freq), size=n, p=freq)
        drawn[0] = inst_bins[f]
        edges = np.array([bins.interval(f, b) for b in range(len(freq))])
        lo, hi = edges[drawn, 0], edges[drawn, 1]
        values[:, f] = lo + rng.random(n) * (hi - lo)
        same[:, j] = drawn == inst_bins[f]
    values[0] = instance

    target = prob(values)
    dist2 = ((1.0 - same) ** 2).sum(axis=1)
    pi = np.exp(-dist2 / config.kernel_width**2)

    k = min(config.k_features, len(features))
    selected = list(range(len(features)))
    if k < len(features):
        selected = sorted(forward_lasso_order(same, target, pi, k))
    intercept, coef = weighted_least_squares(same[:, selected], target, pi)

    weight_of = dict(zip(selected, coef))
    entries = tuple(
        ExplanationEntry(f, float(weight_of.get(j, 0.0)), bins.interval(f, int(inst_bins[f])))
        for j, f in enumerate(features)
    )
    return Explanation(entries, tuple(instance), p0 >= 0.5, p0, intercept)
