"""Run every planner on every trial of a manifest and print a comparison table.

Columns per planner: mean plan size, median overlap, S_scaled. The last lines
tally the directional checks (TimeLIME size vs LIME, overlap and S_scaled
ordering) across trials.
"""
import argparse
import math
import time
import warnings
from pathlib import Path

import numpy as np

from timelime.data import read_manifest
from timelime.ktest import KTestConfig, TrialContext
from timelime.planners import PLANNERS


def fmt(v):
    return "  n/a" if v is None or (isinstance(v, float) and math.isnan(v)) else f"{v:5.2f}"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("manifest", type=Path)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--lime-samples", type=int, default=5000)
    ap.add_argument("--trees", type=int, default=100)
    ap.add_argument("--overlap", choices=["table5", "jaccard"], default="table5")
    args = ap.parse_args()

    cfg = KTestConfig(seed=args.seed, lime_samples=args.lime_samples, n_trees=args.trees,
                      overlap=args.overlap)
    tally = {"size<=lime": 0, "top median": 0, ">lime median": 0, "top S_scaled": 0, "random first": 0}
    trials = read_manifest(args.manifest)
    print(f"{'trial':12s} {'planner':9s} {'size':>5s} {'med':>6s} {'S_sc':>5s}")
    for trial in trials:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            ctx = TrialContext(trial.load(), cfg, trial.name)
        t0 = time.perf_counter()
        reports = {p: ctx.run(p) for p in PLANNERS}
        med, scaled = {}, {}
        for p, r in reports.items():
            med[p] = float(np.median(r.overlaps))
            scaled[p] = r.weighted()[1]
            print(f"{trial.name:12s} {p:9s} {fmt(float(r.sizes.mean()))} {med[p]:6.1f} {fmt(scaled[p])}")
        print(f"{trial.name:12s} ({len(ctx.triple.matched_files)} files, {time.perf_counter() - t0:.1f}s)")
        sc = {p: (-math.inf if v is None else v) for p, v in scaled.items()}
        tally["size<=lime"] += reports["timelime"].sizes.mean() <= reports["lime"].sizes.mean()
        tally["top median"] += all(med["timelime"] >= v for v in med.values())
        tally[">lime median"] += med["timelime"] > med["lime"]
        tally["top S_scaled"] += sc["timelime"] == max(sc.values())
        tally["random first"] += sc["random"] > max(v for p, v in sc.items() if p != "random")
    print()
    for k, v in tally.items():
        print(f"{k:14s} {v}/{len(trials)}")


if __name__ == "__main__":
    main()
