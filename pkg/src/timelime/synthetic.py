"""Synthetic multi-release CK-metric projects for smoke runs and tests.

Not a model of any real project: metrics come from a shared size factor,
bugs from a logistic-Poisson risk on a few metrics, and each release drifts
a small project-specific set of metrics much more than the rest.
"""
from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .data import METRICS, Release, release_from_arrays

# integer-valued metrics are rounded
_RATIOS = {"dam", "mfa", "cam", "lcom3", "amc", "avg_cc"}


def _metrics_from_latent(size, coupling, rng):
    n = len(size)
    wmc = np.maximum(1, np.round(size * 8 + rng.normal(0, 1, n)))
    cols = {
        "wmc": wmc,
        "dit": np.clip(np.round(rng.gamma(1.5, 1.0, n)), 0, 7),
        "noc": np.round(rng.exponential(0.4, n) * (rng.random(n) < 0.2)),
        "cbo": np.maximum(0, np.round(coupling * 6 + rng.normal(0, 1, n))),
        "rfc": np.maximum(1, np.round(wmc * 2.5 + coupling * 5 + rng.normal(0, 2, n))),
        "lcom": np.maximum(0, np.round(wmc**2 * 0.3 * rng.random(n))),
        "ca": np.maximum(0, np.round(coupling * 3 + rng.normal(0, 1, n))),
        "ce": np.maximum(0, np.round(coupling * 4 + rng.normal(0, 1, n))),
        "npm": np.maximum(0, np.round(wmc * 0.7 + rng.normal(0, 1, n))),
        "lcom3": np.clip(rng.beta(2, 2, n) * 2, 0, 2),
        "loc": np.maximum(5, np.round(size * 180 + rng.normal(0, 20, n))),
        "dam": np.clip(rng.beta(3, 1.5, n), 0, 1),
        "moa": np.round(rng.exponential(0.6, n) * coupling),
        "mfa": np.clip(rng.beta(1, 2, n), 0, 1),
        "cam": np.clip(rng.beta(3, 3, n) / (0.5 + size * 0.3), 0, 1),
        "ic": np.clip(np.round(rng.exponential(0.4, n)), 0, 4),
        "cbm": np.clip(np.round(rng.exponential(0.6, n)), 0, 10),
        "amc": np.maximum(1, size * 20 + rng.normal(0, 3, n)),
        "max_cc": np.maximum(1, np.round(size * 4 + rng.normal(0, 1, n))),
        "avg_cc": np.maximum(1, size * 1.3 + rng.normal(0, 0.3, n)),
    }
    return np.column_stack([cols[m] for m in METRICS])


def _tidy(X):
    X = X.copy()
    for j, m in enumerate(METRICS):
        X[:, j] = np.maximum(X[:, j], 0)
        X[:, j] = np.round(X[:, j], 4) if m in _RATIOS else np.round(X[:, j])
    return X


def synthetic_project(name: str, n_files: int = 250, n_releases: int = 3, seed: int = 0,
                      n_hot: int = 5, churn: float = 0.08) -> list[Release]:
    rng = np.random.default_rng(seed)
    hot = rng.choice(len(METRICS), size=n_hot, replace=False)
    hot_sign = rng.choice([-1.0, 1.0], size=n_hot)
    risk_w = np.zeros(len(METRICS))
    risk_w[rng.choice(len(METRICS), size=4, replace=False)] = rng.uniform(0.6, 1.4, 4)
    risk_w[hot[:2]] += 0.8

    size = rng.lognormal(0.0, 0.6, n_files)
    coupling = rng.lognormal(0.0, 0.5, n_files)
    X = _tidy(_metrics_from_latent(size, coupling, rng))
    names = [f"{name}.pkg{i % 17}.Class{i}" for i in range(n_files)]
    next_id = n_files

    releases = []
    for r in range(n_releases):
        scale = X.std(axis=0) + 1e-9
        z = (X - X.mean(axis=0)) / scale
        eta = -1.2 + z @ risk_w * 0.6
        lam = np.exp(eta) * 0.9
        bugs = rng.poisson(lam)
        releases.append(release_from_arrays(f"{name}-{r + 1}.0", names, X, bugs))
        if r == n_releases - 1:
            break
        # evolve: hot metrics drift strongly for a subset of files
        n = len(X)
        touched = rng.random(n) < 0.45
        step = rng.normal(0, 0.08, X.shape) * scale
        for h, s in zip(hot, hot_sign):
            step[touched, h] += s * rng.uniform(0.3, 1.1, touched.sum()) * scale[h]
        step[~touched] *= 0.2
        X = _tidy(X + step)
        # churn: drop some files, add new ones
        keep = rng.random(n) >= churn
        X, names = X[keep], [nm for nm, k in zip(names, keep) if k]
        n_new = int(churn * n_files)
        if n_new:
            Xn = _tidy(_metrics_from_latent(rng.lognormal(0, 0.6, n_new),
                                            rng.lognormal(0, 0.5, n_new), rng))
            X = np.vstack([X, Xn])
            names += [f"{name}.pkg{i % 17}.Class{i}" for i in range(next_id, next_id + n_new)]
            next_id += n_new
    return releases


def write_release_csv(release: Release, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["name", *METRICS, "bug"])
        for rec in release.records:
            w.writerow([rec.file_name, *(repr(v) for v in rec.metrics), rec.bug_count])
    return path


def write_synthetic_trials(out_dir, n_trials: int = 3, n_files: int = 200, seed: int = 0) -> Path:
    """Write ``n_trials`` synthetic three-release projects plus a manifest."""
    out_dir = Path(out_dir)
    lines = []
    for t in range(n_trials):
        name = f"synth{t + 1}"
        rels = synthetic_project(name, n_files=n_files, seed=seed * 1000 + t)
        files = [write_release_csv(r, out_dir / f"{r.version_id}.csv").name for r in rels]
        lines.append(f"{name}: {' '.join(files)}")
    manifest = out_dir / "trials.txt"
    manifest.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return manifest
