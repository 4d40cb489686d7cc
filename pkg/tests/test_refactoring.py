import pytest

from timelime.data import METRICS
from timelime.refactoring import REFACTORINGS, map_to_refactorings


def test_table_shape():
    assert sorted(REFACTORINGS) == list(range(1, 17))
    for _, effects in REFACTORINGS.values():
        assert set(effects) <= set(METRICS)
        assert set(effects.values()) <= {"+", "-", "+?", "-?"}


def test_jedit_plan():
    got = map_to_refactorings({"lcom3": -1, "moa": -1, "avg_cc": -1, "max_cc": -1, "cam": 1})
    assert {2, 3, 15} <= set(got)
    assert got == sorted(got)


def test_hide_delegate():
    assert 6 in map_to_refactorings({"ca": -1})


def test_empty_and_contradiction():
    assert map_to_refactorings({}) == []
    # extract class always lowers loc, so a plan raising loc rules it out
    assert 3 not in map_to_refactorings({"loc": 1, "avg_cc": -1})


def test_unknown_metric():
    with pytest.raises(KeyError):
        map_to_refactorings({"bogus": 1})
