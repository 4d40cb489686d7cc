"""Refactoring methods and their observed effect on CK metrics.

Entries: ``+``/``-`` always increases/decreases the metric, ``+?``/``-?``
sometimes does. Metrics not listed are unaffected.
"""
from __future__ import annotations

from typing import Mapping

from .data import METRICS

REFACTORINGS: dict[int, tuple[str, dict[str, str]]] = {
    1: ("inline methods", {"amc": "-?", "avg_cc": "+", "loc": "-?", "max_cc": "+?",
                           "npm": "-?", "rfc": "-", "wmc": "-"}),
    2: ("extract method", {"amc": "+?", "avg_cc": "-", "loc": "+?", "max_cc": "-?",
                           "npm": "+?", "rfc": "+", "wmc": "+"}),
    3: ("extract class", {"amc": "-", "avg_cc": "-", "cam": "+?", "cbo": "+", "ce": "+",
                          "lcom": "-?", "lcom3": "-?", "loc": "-", "max_cc": "-?",
                          "moa": "-?", "rfc": "-", "wmc": "-"}),
    4: ("inline class", {"amc": "+", "avg_cc": "+", "cam": "-?", "cbo": "-", "ce": "-",
                         "lcom": "+?", "lcom3": "+?", "loc": "+", "max_cc": "+?",
                         "moa": "+?", "rfc": "+", "wmc": "+"}),
    5: ("move method", {"amc": "-", "avg_cc": "+?", "loc": "-", "max_cc": "-?",
                        "moa": "-?", "npm": "-?", "wmc": "-"}),
    6: ("hide delegate", {"ca": "-", "cbo": "-"}),
    7: ("consolidate conditional", {"amc": "-", "avg_cc": "-", "cam": "-", "lcom": "+",
                                    "lcom3": "+", "loc": "-", "max_cc": "-?", "rfc": "+",
                                    "wmc": "+"}),
    8: ("replace conditional with polymorphism", {"amc": "-", "avg_cc": "-", "ce": "+",
                                                  "dit": "+", "ic": "+", "max_cc": "-?",
                                                  "noc": "+"}),
    9: ("flatten conditional", {"amc": "-", "avg_cc": "-", "loc": "-", "max_cc": "-?"}),
    10: ("hide method", {"cam": "+", "dam": "+"}),
    11: ("simplify parameters", {"amc": "-", "avg_cc": "-", "max_cc": "-"}),
    12: ("factory method", {"amc": "+", "avg_cc": "+", "loc": "+", "max_cc": "+?",
                            "rfc": "+", "wmc": "+"}),
    13: ("push down method", {"amc": "-", "avg_cc": "-?", "cbm": "-", "rfc": "-",
                              "wmc": "-"}),
    14: ("encapsulate field", {"cam": "-", "lcom": "+", "lcom3": "+", "loc": "+",
                               "wmc": "+"}),
    15: ("extract subclass", {"amc": "-", "avg_cc": "-", "ca": "+", "cam": "+?", "ce": "+",
                              "lcom": "-?", "lcom3": "-?", "loc": "-", "max_cc": "-?",
                              "mfa": "-", "noc": "+", "rfc": "-", "wmc": "-"}),
    16: ("inline subclass", {"amc": "+", "avg_cc": "+", "ca": "-", "cam": "-?", "ce": "-",
                             "lcom": "+?", "lcom3": "+?", "loc": "+", "max_cc": "+?",
                             "mfa": "+", "noc": "-", "rfc": "+", "wmc": "+"}),
}


def map_to_refactorings(changes: Mapping[str, int]) -> list[int]:
    """Methods consistent with a plan's metric directions (+1 / -1).

    A method qualifies when it definitely moves at least one planned metric
    the planned way and never definitely moves one the opposite way.
    Uncertain (``?``) effects neither count nor contradict.
    """
    changes = {m: d for m, d in changes.items() if d}
    unknown = set(changes) - set(METRICS)
    if unknown:
        raise KeyError(f"unknown metrics {sorted(unknown)}")
    if not changes:
        return []
    out = []
    for mid, (_, effects) in REFACTORINGS.items():
        agree = False
        clash = False
        for metric, d in changes.items():
            eff = effects.get(metric)
            if eff is None or eff.endswith("?"):
                continue
            sign = 1 if eff == "+" else -1
            if sign == d:
                agree = True
            else:
                clash = True
        if agree and not clash:
            out.append(mid)
    return sorted(out)
