"""SMOTE oversampling of the training release."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import MetricRecord


class PreprocessingError(ValueError):
    pass


@dataclass(frozen=True)
class SmoteConfig:
    k_neighbors: int = 5
    target_ratio: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if self.k_neighbors < 1:
            raise ValueError("k_neighbors must be >= 1")
        if not 0 < self.target_ratio <= 1:
            raise ValueError("target_ratio must lie in (0, 1]")


def smote_arrays(X, y, config: SmoteConfig = SmoteConfig()):
    """Oversample the minority class of a binary problem.

    Returns ``(X_out, y_out, n_synthetic)``. Original rows come first and are
    untouched; synthetic minority rows are appended.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=bool)
    n_pos = int(y.sum())
    n_neg = len(y) - n_pos
    if n_pos == 0 or n_neg == 0:
        raise PreprocessingError("SMOTE needs both classes present")
    minority_label = n_pos < n_neg
    minority = X[y == minority_label]
    n_major = max(n_pos, n_neg)
    target = int(round(config.target_ratio * n_major))
    n_new = max(0, target - len(minority))
    if n_new == 0:
        return X.copy(), y.copy(), 0
    if len(minority) < 2:
        raise PreprocessingError("SMOTE needs at least two minority records to interpolate")

    k = min(config.k_neighbors, len(minority) - 1)
    d2 = ((minority[:, None, :] - minority[None, :, :]) ** 2).sum(axis=-1)
    np.fill_diagonal(d2, np.inf)
    # stable sort: equidistant neighbours resolve by index
    neighbours = np.argsort(d2, axis=1, kind="stable")[:, :k]

    rng = np.random.default_rng(config.seed)
    base = rng.integers(0, len(minority), size=n_new)
    pick = neighbours[base, rng.integers(0, k, size=n_new)]
    u = rng.random(n_new)[:, None]
    a = minority[base]
    synthetic = a + u * (minority[pick] - a)

    X_out = np.vstack([X, synthetic])
    y_out = np.concatenate([y, np.full(n_new, minority_label)])
    return X_out, y_out, n_new


def smote(records: list[MetricRecord], config: SmoteConfig = SmoteConfig()) -> list[MetricRecord]:
    """Record-level wrapper; synthetic records are named ``smote#<i>``."""
    X = np.array([r.metrics for r in records], dtype=float)
    y = np.array([r.defective for r in records], dtype=bool)
    X_out, y_out, n_new = smote_arrays(X, y, config)
    out = list(records)
    for i, (row, label) in enumerate(zip(X_out[len(records):], y_out[len(records):])):
        out.append(MetricRecord(f"smote#{i}", tuple(float(v) for v in row), int(label)))
    return out
