"""Three-release evaluation: fit on x, plan for defective files of y, score on z."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from functools import cached_property
from typing import Optional

import numpy as np

from .data import METRICS, NormalizationMap, ReleaseTriple, compute_ndpv, normalize
from .discretize import BinScheme, fit_bins
from .evaluate import OverlapScore, iqr, overlap, precision_recall, weighted_scores
from .explain import Explanation, LimeConfig, TrainStats, explain_instance
from .learners import ForestConfig, ForestModel, fit_forest
from .planners import (
    PLANNERS,
    Plan,
    XTree,
    alves_rules,
    classical_plan,
    hedge_g,
    history_for_releases,
    logistic_fits,
    oliveira_rules,
    precedented_features,
    random_plan,
    shatnawi_rules,
    timelime_plan,
)
from .preprocess import SmoteConfig, smote_arrays
from .scottknott import scott_knott_rank


@dataclass(frozen=True)
class KTestConfig:
    M: int = 5
    seed: int = 0
    flip: str = "mirror"
    overlap: str = "table5"
    lime_samples: int = 5000
    kernel_width: float = 0.75 * math.sqrt(len(METRICS))
    n_trees: int = 100
    max_features: int = 5
    smote_k: int = 5
    smote_ratio: float = 1.0
    alves_pct: float = 0.70
    varl_p0: float = 0.05
    xtree_min_support: float = 0.05

    def __post_init__(self):
        if self.M < 1:
            raise ValueError("M must be >= 1")
        if self.flip not in ("mirror", "complement"):
            raise ValueError(f"unknown flip mode {self.flip!r}")
        if self.overlap not in ("table5", "jaccard"):
            raise ValueError(f"unknown overlap mode {self.overlap!r}")


def derive_seed(seed: int, *keys: int) -> int:
    return int(np.random.SeedSequence([seed, *keys]).generate_state(1)[0])


@dataclass(frozen=True)
class FileReport:
    file: str
    plan_size: int
    overlap_pct: float
    ndpv: int
    tp: int
    tn: int
    fp: int
    fn: int


@dataclass
class ScoreReport:
    dataset: str
    planner: str
    files: list[FileReport]
    plans: list[Plan] = field(default_factory=list, repr=False)

    @property
    def overlaps(self) -> np.ndarray:
        return np.array([f.overlap_pct for f in self.files])

    @property
    def sizes(self) -> np.ndarray:
        return np.array([f.plan_size for f in self.files])

    def weighted(self) -> tuple[float, Optional[float]]:
        return weighted_scores([f.overlap_pct / 100 for f in self.files], [f.ndpv for f in self.files])

    def summary(self) -> dict:
        if not self.files:
            return {"n_files": 0}
        S, S_scaled = self.weighted()
        tp = sum(f.tp for f in self.files)
        fp = sum(f.fp for f in self.files)
        fn = sum(f.fn for f in self.files)
        tn = sum(f.tn for f in self.files)
        precision, recall = precision_recall(tp, fp, fn)
        return {
            "n_files": len(self.files),
            "mean_plan_size": float(self.sizes.mean()),
            "median_overlap": float(np.median(self.overlaps)),
            "iqr_overlap": iqr(self.overlaps),
            "S": S,
            "S_scaled": S_scaled,
            "tp": tp, "tn": tn, "fp": fp, "fn": fn,
            "precision": precision,
            "recall": recall,
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["file", "plan_size", "overlap_pct", "ndpv", "tp", "tn", "fp", "fn"])
        for f in self.files:
            w.writerow([f.file, f.plan_size, repr(float(f.overlap_pct)), f.ndpv, f.tp, f.tn, f.fp, f.fn])
        return buf.getvalue()


class TrialContext:
    """Fitted state shared by every planner on one release triple.

    Everything is fit from x (and the x -> y history); z is only touched when
    scoring.
    """

    def __init__(self, triple: ReleaseTriple, config: KTestConfig = KTestConfig(), name: str = ""):
        self.triple = triple
        self.config = config
        self.name = name or triple.y.version_id
        self.nmap = NormalizationMap.fit([triple.x, triple.y])
        self.x = normalize(triple.x, self.nmap)
        self.y_index = normalize(triple.y, self.nmap).index()
        self.z_index = normalize(triple.z, self.nmap).index()
        self.y_raw = triple.y.index()
        self._cache: dict[str, ScoreReport] = {}

    # -- fitted components ------------------------------------------------
    @cached_property
    def bins(self) -> BinScheme:
        return fit_bins(self.x.matrix(), self.x.labels())

    @cached_property
    def forest(self) -> ForestModel:
        c = self.config
        X, y = self.x.matrix(), self.x.labels()
        if y.all() or not y.any() or y.sum() < 2 or (~y).sum() < 2:
            Xs, ys = X, y
        else:
            Xs, ys, _ = smote_arrays(X, y, SmoteConfig(c.smote_k, c.smote_ratio, derive_seed(c.seed, 1)))
        return fit_forest(Xs, ys, ForestConfig(c.n_trees, c.max_features, derive_seed(c.seed, 2)))

    @cached_property
    def train_stats(self) -> TrainStats:
        return TrainStats.from_data(self.x.matrix(), self.bins)

    @cached_property
    def shift(self):
        return hedge_g(self.triple.x.matrix(), self.triple.y.matrix())

    @cached_property
    def precedented(self) -> list[int]:
        return precedented_features(self.shift, self.config.M)

    @cached_property
    def history(self):
        return history_for_releases(self.triple.x, self.triple.y, self.nmap, self.bins)

    @cached_property
    def logistic(self):
        return logistic_fits(self.triple.x)

    @cached_property
    def explanations(self) -> dict[str, Explanation]:
        c = self.config
        out = {}
        for i, name in enumerate(self.triple.matched_files):
            lime = LimeConfig(c.lime_samples, c.kernel_width, len(METRICS), derive_seed(c.seed, 3, i))
            out[name] = explain_instance(
                self.forest, self.y_index[name].metrics, self.bins, self.train_stats, lime
            )
        return out

    @cached_property
    def xtree(self) -> XTree:
        return XTree(self.bins, self.config.xtree_min_support).fit(self.x.matrix(), self.x.labels())

    # -- planning ---------------------------------------------------------
    def plans(self, planner: str) -> list[Plan]:
        if planner not in PLANNERS:
            raise ValueError(f"unknown planner {planner!r}")
        c = self.config
        names = self.triple.matched_files
        if planner == "lime":
            return [classical_plan(self.explanations[n], flip_mode=c.flip) for n in names]
        if planner == "timelime":
            return [timelime_plan(self.explanations[n], self.precedented, self.history, c.M, c.flip)
                    for n in names]
        if planner == "random":
            sizes = [p.size for p in self.plans_cached("timelime")]
            return [random_plan(self.y_index[n].metrics, s, derive_seed(c.seed, 4, i))
                    for i, (n, s) in enumerate(zip(names, sizes))]
        if planner in ("alves", "shatnawi", "oliveira"):
            if planner == "alves":
                rules = alves_rules(self.triple.x, c.alves_pct, self.logistic)
            elif planner == "shatnawi":
                rules = shatnawi_rules(self.triple.x, c.varl_p0, self.logistic)
            else:
                rules, _ = oliveira_rules(self.triple.x)
            return [rules.apply(self.y_raw[n].metrics, self.nmap) for n in names]
        return [self.xtree.plan(self.y_index[n].metrics) for n in names]

    def plans_cached(self, planner: str) -> list[Plan]:
        return self.run(planner).plans

    def run(self, planner: str) -> ScoreReport:
        if planner in self._cache:
            return self._cache[planner]
        plans = self.plans(planner)
        files = []
        for name, plan in zip(self.triple.matched_files, plans):
            score = overlap(plan, self.y_index[name].metrics, self.z_index[name].metrics,
                            self.bins, self.config.overlap)
            files.append(file_report(name, plan, score, compute_ndpv(self.triple, name)))
        report = ScoreReport(self.name, planner, files, plans)
        self._cache[planner] = report
        return report


def file_report(name: str, plan: Plan, score: OverlapScore, ndpv: int) -> FileReport:
    return FileReport(name, plan.size, score.score, ndpv, score.tp, score.tn, score.fp, score.fn)


def ktest_run(triple: ReleaseTriple, planner: str, config: KTestConfig = KTestConfig(),
              name: str = "") -> ScoreReport:
    return TrialContext(triple, config, name).run(planner)


def rank_planners(reports: dict[str, ScoreReport], seed: int = 0) -> dict[str, int]:
    groups = {p: r.overlaps for p, r in reports.items() if len(r.files)}
    return scott_knott_rank(groups, seed=seed) if groups else {}


def trial_summary(reports: dict[str, ScoreReport], seed: int = 0) -> dict:
    ranks = rank_planners(reports, seed)
    out = {}
    for planner, r in reports.items():
        s = r.summary()
        s["overlap_rank"] = ranks.get(planner)
        out[planner] = s
    return out


def config_metadata(config: KTestConfig) -> dict:
    meta = asdict(config)
    meta.update({
        "smote_distance": "euclidean",
        "forest_criterion": "gini",
        "forest_max_depth": None,
        "lime_k_features": len(METRICS),
        "lime_kernel": "exp(-d^2 / width^2) on bin indicators",
        "discretizer": "fayyad-irani mdlp, quartile fallback, fit on x",
        "scott_knott": {"bootstrap": 512, "alpha": 0.05, "cliffs_delta": 0.147},
        "oliveira": {"p_grid": list(range(10, 100, 10)), "min_compliance": 0.9, "tail": 90},
        "logistic_test": "wald",
    })
    return meta


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"
