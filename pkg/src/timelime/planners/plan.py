"""Plan representation and the simple planners (classical LIME, RandomWalk)."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from ..data import METRICS
from ..explain import Explanation

Interval = tuple[float, float]

FLIP_MODES = ("mirror", "complement")


@dataclass(frozen=True)
class Plan:
    """Per-feature target intervals in normalized space; ``None`` = no change."""

    intervals: tuple[Optional[Interval], ...]
    planner: str = ""
    support: int = 0
    flags: tuple[str, ...] = field(default=())

    def __post_init__(self):
        for iv in self.intervals:
            if iv is not None:
                lo, hi = iv
                if not (0.0 <= lo <= hi <= 1.0):
                    raise ValueError(f"bad interval {iv}")

    @classmethod
    def no_change(cls, n_features: int = len(METRICS), planner: str = "", **kw) -> "Plan":
        return cls((None,) * n_features, planner, **kw)

    @classmethod
    def from_changes(cls, changes: dict[int, Interval], n_features: int = len(METRICS),
                     planner: str = "", **kw) -> "Plan":
        ivs = [None] * n_features
        for f, iv in changes.items():
            ivs[f] = (float(iv[0]), float(iv[1]))
        return cls(tuple(ivs), planner, **kw)

    @property
    def size(self) -> int:
        return sum(iv is not None for iv in self.intervals)

    def changed_features(self) -> list[int]:
        return [f for f, iv in enumerate(self.intervals) if iv is not None]

    def directions(self, instance: Sequence[float]) -> dict[int, int]:
        """+1 / -1 / 0 per changed feature relative to the instance value."""
        out = {}
        for f in self.changed_features():
            lo, hi = self.intervals[f]
            v = instance[f]
            out[f] = 1 if lo > v else (-1 if hi < v else 0)
        return out

    def to_json(self, file_name: str, instance: Sequence[float], nmap=None) -> dict:
        """Serializable form; intervals in raw units when a normalization map is given."""
        direction = {1: "increase", -1: "decrease", 0: "hold"}
        dirs = self.directions(instance)
        features = {}
        for f, name in enumerate(METRICS[: len(self.intervals)]):
            iv = self.intervals[f]
            if iv is None:
                features[name] = {"action": "keep"}
                continue
            lo, hi = iv
            if nmap is not None:
                lo, hi = nmap.inverse_value(f, lo), nmap.inverse_value(f, hi)
            features[name] = {
                "action": "move",
                "interval": [lo, hi],
                "direction": direction[dirs[f]],
            }
        return {
            "file": file_name,
            "planner": self.planner,
            "size": self.size,
            "support": self.support,
            "features": features,
        }


def flip(interval: Interval, mode: str = "mirror") -> Interval:
    """Flip an interval within [0, 1].

    ``mirror`` reflects about 0.5. ``complement`` takes the larger of the two
    pieces of [0, 1] left outside the interval (lower piece on ties).
    """
    a, b = interval
    if mode == "mirror":
        return (1.0 - b, 1.0 - a)
    if mode == "complement":
        if a <= 0.0 and b >= 1.0:
            return (0.0, 1.0)
        below, above = (0.0, a), (b, 1.0)
        if a <= 0.0:
            return above
        if b >= 1.0:
            return below
        return above if (1.0 - b) > a else below
    raise ValueError(f"unknown flip mode {mode!r}")


def midpoint(interval: Interval) -> float:
    return (interval[0] + interval[1]) / 2


def flip_direction(interval: Interval, mode: str = "mirror") -> int:
    d = midpoint(flip(interval, mode)) - midpoint(interval)
    return int(np.sign(d))


def classical_plan(e: Explanation, n_features: int | None = None, flip_mode: str = "mirror") -> Plan:
    """Flip every feature with a non-negative weight."""
    n = len(e.instance) if n_features is None else n_features
    changes = {en.feature: flip(en.interval, flip_mode) for en in e.entries if en.weight >= 0}
    return Plan.from_changes(changes, n, "lime")


def random_plan(instance: Sequence[float], n: int, rng) -> Plan:
    """Random sorted intervals on ``n`` uniformly chosen features."""
    d = len(instance)
    if not 0 <= n <= d:
        raise ValueError(f"n must lie in [0, {d}]")
    rng = np.random.default_rng(rng)
    chosen = rng.choice(d, size=n, replace=False) if n else []
    changes = {}
    for f in sorted(int(c) for c in chosen):
        a, b = sorted(rng.random(2))
        changes[f] = (float(a), float(b))
    return Plan.from_changes(changes, d, "random")
