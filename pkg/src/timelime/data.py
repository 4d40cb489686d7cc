"""Release loading, file matching across releases and min-max normalization."""
from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

METRICS = (
    "wmc", "dit", "noc", "cbo", "rfc", "lcom", "ca", "ce", "npm", "lcom3",
    "loc", "dam", "moa", "mfa", "cam", "ic", "cbm", "amc", "max_cc", "avg_cc",
)
N_FEATURES = len(METRICS)
LOC_INDEX = METRICS.index("loc")


class SchemaError(ValueError):
    """A release CSV is missing a required column."""


class ParseError(ValueError):
    """A release CSV cell could not be parsed."""


class EmptyTripleWarning(UserWarning):
    pass


@dataclass(frozen=True)
class MetricRecord:
    file_name: str
    metrics: tuple[float, ...]
    bug_count: int

    def __post_init__(self):
        if len(self.metrics) != N_FEATURES:
            raise ValueError(f"expected {N_FEATURES} metrics, got {len(self.metrics)}")
        if not all(math.isfinite(v) for v in self.metrics):
            raise ValueError(f"non-finite metric in {self.file_name!r}")
        if self.bug_count < 0:
            raise ValueError(f"negative bug count in {self.file_name!r}")

    @property
    def defective(self) -> bool:
        return self.bug_count > 0


@dataclass(frozen=True)
class Release:
    version_id: str
    records: tuple[MetricRecord, ...]
    # None when the release has no records
    feature_bounds: tuple[tuple[float, float], ...] | None = field(default=None)

    def __post_init__(self):
        names = [r.file_name for r in self.records]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate file names in release {self.version_id!r}")
        if self.feature_bounds is None and self.records:
            m = self.matrix()
            bounds = tuple((float(lo), float(hi)) for lo, hi in zip(m.min(axis=0), m.max(axis=0)))
            object.__setattr__(self, "feature_bounds", bounds)

    def __len__(self):
        return len(self.records)

    @property
    def names(self) -> list[str]:
        return [r.file_name for r in self.records]

    def matrix(self) -> np.ndarray:
        if not self.records:
            return np.empty((0, N_FEATURES))
        return np.array([r.metrics for r in self.records], dtype=float)

    def labels(self) -> np.ndarray:
        return np.array([r.defective for r in self.records], dtype=bool)

    def bug_counts(self) -> np.ndarray:
        return np.array([r.bug_count for r in self.records], dtype=int)

    def index(self) -> dict[str, MetricRecord]:
        return {r.file_name: r for r in self.records}

    def get(self, file_name: str) -> MetricRecord:
        for r in self.records:
            if r.file_name == file_name:
                return r
        raise KeyError(file_name)


def release_from_arrays(version_id: str, names: Sequence[str], X, bugs) -> Release:
    X = np.asarray(X, dtype=float)
    records = tuple(
        MetricRecord(str(n), tuple(float(v) for v in row), int(b))
        for n, row, b in zip(names, X, bugs)
    )
    return Release(version_id, records)


def _parse_float(cell: str, row: int, column: str) -> float:
    try:
        value = float(cell)
    except ValueError:
        raise ParseError(f"row {row}: column {column!r} is not numeric: {cell!r}") from None
    if not math.isfinite(value):
        raise ParseError(f"row {row}: column {column!r} is not finite: {cell!r}")
    return value


def load_release(path, version_id: str | None = None) -> Release:
    """Read one release CSV.

    Headers are matched case-insensitively; when a column name repeats (the
    PROMISE exports carry ``name`` twice) the first occurrence wins. Extra
    columns are ignored. Row indices in errors count data rows from 0.
    """
    path = Path(path)
    if version_id is None:
        version_id = path.stem
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: empty file, no header") from None
        columns: dict[str, int] = {}
        for i, col in enumerate(header):
            columns.setdefault(col.strip().lower(), i)
        for required in ("name", *METRICS, "bug"):
            if required not in columns:
                raise SchemaError(f"{path}: missing column {required!r}")
        name_col, bug_col = columns["name"], columns["bug"]
        metric_cols = [columns[m] for m in METRICS]
        records = []
        for row_idx, row in enumerate(reader):
            if not row or all(not c.strip() for c in row):
                continue
            metrics = tuple(_parse_float(row[c], row_idx, header[c]) for c in metric_cols)
            bugs = _parse_float(row[bug_col], row_idx, "bug")
            if bugs < 0 or bugs != int(bugs):
                raise ParseError(f"row {row_idx}: bug count must be a non-negative integer: {row[bug_col]!r}")
            records.append(MetricRecord(row[name_col].strip(), metrics, int(bugs)))
    return Release(version_id, tuple(records))


@dataclass(frozen=True)
class ReleaseTriple:
    oldest: Release
    newer: Release
    most_recent: Release
    matched_files: tuple[str, ...]

    @property
    def x(self) -> Release:
        return self.oldest

    @property
    def y(self) -> Release:
        return self.newer

    @property
    def z(self) -> Release:
        return self.most_recent


def build_triple(x: Release, y: Release, z: Release) -> ReleaseTriple:
    """Match files present in all three releases and defective in ``y``.

    Matching is exact on file name. Order follows ``y``.
    """
    if len({x.version_id, y.version_id, z.version_id}) != 3:
        raise ValueError("a triple needs three distinct releases")
    in_x = set(x.names)
    in_z = set(z.names)
    matched = tuple(
        r.file_name for r in y.records
        if r.defective and r.file_name in in_x and r.file_name in in_z
    )
    if not matched:
        warnings.warn(
            f"no matched defective files for {x.version_id}/{y.version_id}/{z.version_id}",
            EmptyTripleWarning,
            stacklevel=2,
        )
    return ReleaseTriple(x, y, z, matched)


def compute_ndpv(triple: ReleaseTriple, file_name: str) -> int:
    """Bugs in y minus bugs in z for a matched file (positive means fewer bugs)."""
    if file_name not in triple.matched_files:
        raise LookupError(f"{file_name!r} is not a matched file of this triple")
    return triple.y.get(file_name).bug_count - triple.z.get(file_name).bug_count


@dataclass(frozen=True)
class NormalizationMap:
    """Per-feature min-max map into [0, 1].

    Constant features (min == max) map every value to 0.0.
    """

    lows: tuple[float, ...]
    highs: tuple[float, ...]
    clamp: bool = True

    @classmethod
    def fit(cls, releases: Iterable[Release], clamp: bool = True) -> "NormalizationMap":
        mats = [r.matrix() for r in releases if len(r)]
        if not mats:
            raise ValueError("cannot fit a normalization map on empty releases")
        m = np.vstack(mats)
        return cls(tuple(map(float, m.min(axis=0))), tuple(map(float, m.max(axis=0))), clamp)

    @property
    def constant(self) -> tuple[bool, ...]:
        return tuple(hi <= lo for lo, hi in zip(self.lows, self.highs))

    def transform(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        lo = np.asarray(self.lows)
        span = np.asarray(self.highs) - lo
        const = span <= 0
        out = (X - lo) / np.where(const, 1.0, span)
        out = np.where(const, 0.0, out)
        if self.clamp:
            out = np.clip(out, 0.0, 1.0)
        return out

    def inverse(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        lo = np.asarray(self.lows)
        return lo + X * (np.asarray(self.highs) - lo)

    def transform_value(self, feature: int, value: float) -> float:
        lo, hi = self.lows[feature], self.highs[feature]
        if hi <= lo:
            return 0.0
        v = (value - lo) / (hi - lo)
        return min(max(v, 0.0), 1.0) if self.clamp else v

    def inverse_value(self, feature: int, value: float) -> float:
        lo, hi = self.lows[feature], self.highs[feature]
        return lo + value * (hi - lo)


def normalize(release: Release, nmap: NormalizationMap) -> Release:
    if not len(release):
        return Release(release.version_id, ())
    X = nmap.transform(release.matrix())
    return release_from_arrays(release.version_id, release.names, X, release.bug_counts())


@dataclass(frozen=True)
class Trial:
    name: str
    paths: tuple[Path, Path, Path]

    def load(self) -> ReleaseTriple:
        x, y, z = (load_release(p, f"{self.name}:{p.stem}") for p in self.paths)
        return build_triple(x, y, z)


def read_manifest(path) -> list[Trial]:
    """Parse ``dataset: x.csv y.csv z.csv`` lines; ``#`` starts a comment.

    Relative CSV paths resolve against the manifest's directory.
    """
    path = Path(path)
    trials = []
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, sep, rest = line.partition(":")
        files = rest.split()
        if not sep or not name.strip() or len(files) != 3:
            raise ValueError(f"{path}:{lineno}: expected 'dataset: x.csv y.csv z.csv'")
        resolved = tuple(
            (Path(f) if Path(f).is_absolute() else path.parent / f) for f in files
        )
        trials.append(Trial(name.strip(), resolved))
    names = [t.name for t in trials]
    if len(set(names)) != len(names):
        raise ValueError(f"{path}: duplicate dataset names")
    return trials
