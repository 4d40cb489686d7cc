"""Defect classifiers: a random forest black box and univariate logistic fits."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Protocol

import numpy as np
from scipy.stats import norm
from sklearn.ensemble import RandomForestClassifier


class ProbabilisticClassifier(Protocol):
    """Anything LIME can query: rows in, ``(n, 2)`` class probabilities out."""

    def predict_proba(self, X) -> np.ndarray: ...


@dataclass(frozen=True)
class ForestConfig:
    n_trees: int = 100
    max_features_per_split: int = 5
    seed: int = 0


class ForestModel:
    """Random forest over normalized metric vectors.

    Column 1 of ``predict_proba`` is the defective class. A training set with a
    single class yields a constant model (``degenerate`` is set).
    """

    def __init__(self, config: ForestConfig, n_features: int):
        self.config = config
        self.n_features = n_features
        self.degenerate = False
        self._constant: np.ndarray | None = None
        self._forest: RandomForestClassifier | None = None

    @property
    def trees(self):
        return [] if self._forest is None else self._forest.estimators_

    def predict_proba(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        if X.ndim == 1:
            X = X[None, :]
        if X.shape[1] != self.n_features:
            raise ValueError(f"expected {self.n_features} features, got {X.shape[1]}")
        if self._constant is not None:
            return np.tile(self._constant, (len(X), 1))
        return self._forest.predict_proba(X)

    def predict(self, X) -> np.ndarray:
        return self.predict_proba(X)[:, 1] >= 0.5


def fit_forest(X, y, config: ForestConfig = ForestConfig()) -> ForestModel:
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=bool)
    if len(X) < 1:
        raise ValueError("cannot fit a forest on no records")
    model = ForestModel(config, X.shape[1])
    if y.all() or not y.any():
        model.degenerate = True
        model._constant = np.array([0.0, 1.0]) if y.all() else np.array([1.0, 0.0])
        return model
    forest = RandomForestClassifier(
        n_estimators=config.n_trees,
        criterion="gini",
        max_depth=None,
        max_features=min(config.max_features_per_split, X.shape[1]),
        bootstrap=True,
        random_state=config.seed,
        n_jobs=1,
    )
    forest.fit(X, y.astype(int))
    model._forest = forest
    return model


@dataclass(frozen=True)
class LogisticFit:
    alpha: float
    beta: float
    p_value: float
    converged: bool
    separated: bool = False
    se_beta: float = math.nan


def _separated(x: np.ndarray, y: np.ndarray) -> bool:
    # complete or quasi-complete separation on one predictor
    pos, neg = x[y], x[~y]
    return bool(neg.max() <= pos.min() or pos.max() <= neg.min())


def fit_univariate_logistic(x, y, tol: float = 1e-8, max_iter: int = 100) -> LogisticFit:
    """Maximum-likelihood ``logit P(y) = alpha + beta * x`` by IRLS.

    The p-value is the two-sided Wald test on ``beta`` using the observed
    information. The predictor is standardized internally and the
    coefficients mapped back. Under separation the MLE does not exist: the
    last finite iterate is returned with ``separated=True`` and p-value 0.
    A constant predictor gives ``beta=0`` and p-value 1.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=bool)
    if len(x) != len(y):
        raise ValueError("x and y differ in length")
    if len(x) < 4:
        raise ValueError("need at least 4 observations")
    if y.all() or not y.any():
        raise ValueError("both labels must be present")

    mu, sd = x.mean(), x.std()
    rate = y.mean()
    base = math.log(rate / (1 - rate))
    if sd == 0:
        return LogisticFit(base, 0.0, 1.0, True, False, math.inf)

    separated = _separated(x, y)
    t = (x - mu) / sd
    A = np.column_stack([np.ones_like(t), t])
    yf = y.astype(float)
    coef = np.array([base, 0.0])
    converged = False
    for _ in range(max_iter):
        eta = A @ coef
        p = 1.0 / (1.0 + np.exp(-eta))
        w = p * (1 - p)
        if w.min() < 1e-12:
            break
        info = A.T @ (w[:, None] * A)
        step = np.linalg.solve(info, A.T @ (yf - p))
        coef = coef + step
        if np.max(np.abs(step)) < tol:
            converged = True
            break

    eta = A @ coef
    p = 1.0 / (1.0 + np.exp(-eta))
    w = np.maximum(p * (1 - p), 1e-300)
    info = A.T @ (w[:, None] * A)
    try:
        se_t = math.sqrt(np.linalg.inv(info)[1, 1])
    except np.linalg.LinAlgError:
        se_t = math.inf

    a_t, b_t = float(coef[0]), float(coef[1])
    beta = b_t / sd
    alpha = a_t - b_t * mu / sd
    se_beta = se_t / sd
    if separated:
        return LogisticFit(alpha, beta, 0.0, False, True, se_beta)
    z = abs(b_t) / se_t if se_t > 0 else math.inf
    p_value = float(min(1.0, max(0.0, 2 * norm.sf(z))))
    return LogisticFit(alpha, beta, p_value, converged, False, se_beta)
