"""Write synthetic three-release projects and a manifest for smoke runs."""
import argparse
from pathlib import Path

from timelime.synthetic import write_synthetic_trials


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("out", type=Path)
    ap.add_argument("--trials", type=int, default=3)
    ap.add_argument("--files", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    manifest = write_synthetic_trials(args.out, args.trials, args.files, args.seed)
    print(manifest)


if __name__ == "__main__":
    main()
