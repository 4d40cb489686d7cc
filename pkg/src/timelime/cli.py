"""Command line entry point: ``timelime run`` and ``timelime explain``."""
from __future__ import annotations

import argparse
import json
import logging
import sys
import warnings
from pathlib import Path

from .data import METRICS, ParseError, SchemaError, read_manifest
from .ktest import KTestConfig, TrialContext, config_metadata, dumps, trial_summary
from .planners import PLANNERS
from .refactoring import map_to_refactorings

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_INTERNAL = 0, 1, 2, 3

log = logging.getLogger("timelime")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _planner_list(text: str) -> list[str]:
    names = [p.strip() for p in text.split(",") if p.strip()]
    bad = [p for p in names if p not in PLANNERS]
    if bad or not names:
        raise argparse.ArgumentTypeError(
            f"unknown planner(s) {', '.join(bad) or '(none)'}; choose from {', '.join(PLANNERS)}"
        )
    # de-duplicate, keep order
    return list(dict.fromkeys(names))


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--manifest", required=True, type=Path, help="trial manifest (dataset: x.csv y.csv z.csv)")
    p.add_argument("--m", type=int, default=5, dest="M", help="number of precedented features (default 5)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--flip", choices=["mirror", "complement"], default="mirror")
    p.add_argument("--overlap", choices=["table5", "jaccard"], default="table5")
    p.add_argument("--lime-samples", type=int, default=5000)
    p.add_argument("--trees", type=int, default=100)
    p.add_argument("--smote-k", type=int, default=5)
    p.add_argument("--smote-ratio", type=float, default=1.0)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="timelime", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    run = sub.add_parser("run", help="run the three-release evaluation for every trial")
    _add_common(run)
    run.add_argument("--planners", type=_planner_list, default=list(PLANNERS))
    run.add_argument("--out", type=Path, required=True, help="output directory")

    exp = sub.add_parser("explain", help="explanation and plan for one file of one trial")
    _add_common(exp)
    exp.add_argument("--dataset", required=True)
    exp.add_argument("--file", required=True, dest="file_name")
    exp.add_argument("--planner", choices=PLANNERS, default="timelime")
    return parser


def _config(args) -> KTestConfig:
    try:
        return KTestConfig(
            M=args.M, seed=args.seed, flip=args.flip, overlap=args.overlap,
            lime_samples=args.lime_samples, n_trees=args.trees,
            smote_k=args.smote_k, smote_ratio=args.smote_ratio,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_run(args) -> int:
    config = _config(args)
    trials = read_manifest(args.manifest)
    loaded = []
    for trial in trials:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            loaded.append((trial, trial.load()))

    args.out.mkdir(parents=True, exist_ok=True)
    summary, trial_meta = {}, []
    for trial, triple in loaded:
        log.info("%s: %d matched files", trial.name, len(triple.matched_files))
        ctx = TrialContext(triple, config, trial.name)
        reports = {}
        for planner in args.planners:
            report = ctx.run(planner)
            reports[planner] = report
            (args.out / f"{trial.name}_{planner}.csv").write_text(report.to_csv(), encoding="utf-8")
        summary[trial.name] = trial_summary(reports, config.seed)
        trial_meta.append({
            "dataset": trial.name,
            "releases": [p.name for p in trial.paths],
            "matched_files": len(triple.matched_files),
            "precedented": [METRICS[f] for f in ctx.precedented] if triple.matched_files else [],
        })
    (args.out / "summary.json").write_text(dumps(summary), encoding="utf-8")
    meta = {"planners": args.planners, "config": config_metadata(config), "trials": trial_meta}
    (args.out / "run_metadata.json").write_text(dumps(meta), encoding="utf-8")
    return EXIT_OK


def explain_payload(ctx: TrialContext, file_name: str, planner: str = "timelime") -> dict:
    if file_name not in ctx.triple.matched_files:
        raise LookupError(f"{file_name!r} is not a matched defective file of {ctx.name}")
    idx = ctx.triple.matched_files.index(file_name)
    e = ctx.explanations[file_name]
    plan = ctx.plans_cached(planner)[idx]
    instance = ctx.y_index[file_name].metrics
    directions = {METRICS[f]: d for f, d in plan.directions(instance).items()}
    return {
        "dataset": ctx.name,
        "file": file_name,
        "defect_probability": e.probability,
        "explanation": e.to_json(METRICS),
        "precedented": [METRICS[f] for f in ctx.precedented],
        "plan": plan.to_json(file_name, instance, ctx.nmap),
        "refactorings": map_to_refactorings(directions),
    }


def cmd_explain(args) -> int:
    config = _config(args)
    trials = {t.name: t for t in read_manifest(args.manifest)}
    if args.dataset not in trials:
        raise LookupError(f"dataset {args.dataset!r} not in manifest")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        triple = trials[args.dataset].load()
    ctx = TrialContext(triple, config, args.dataset)
    sys.stdout.write(json.dumps(explain_payload(ctx, args.file_name, args.planner), indent=2) + "\n")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    handler = cmd_run if args.command == "run" else cmd_explain
    try:
        return handler(args)
    except UsageError as exc:
        print(f"timelime: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SchemaError, ParseError, FileNotFoundError, LookupError, ValueError) as exc:
        print(f"timelime: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception as exc:  # noqa: BLE001
        log.exception("internal error")
        print(f"timelime: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
