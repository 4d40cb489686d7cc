from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import maximal_itemsets_bruteforce
from timelime.planners.fpgrowth import fp_growth, support


def test_small_example():
    tx = [{"a", "b"}, {"a", "b"}, {"a"}]
    assert set(fp_growth(tx, 2)) == {frozenset({"a", "b"})}
    assert set(fp_growth(tx, 3)) == {frozenset({"a"})}
    assert fp_growth(tx, 4) == []


def test_empty_input():
    assert fp_growth([], 1) == []


def test_support_helper():
    tx = [{1, 2, 3}, {1, 2}, {2}]
    assert support(tx, {1, 2}) == 2
    assert support(tx, set()) == 3


@given(
    st.lists(st.frozensets(st.integers(0, 7), max_size=6), min_size=1, max_size=25),
    st.integers(1, 6),
)
@settings(max_examples=200, deadline=None)
def test_matches_bruteforce(tx, min_support):
    got = fp_growth(tx, min_support)
    assert len(got) == len(set(got))
    assert set(got) == maximal_itemsets_bruteforce(tx, min_support)
    for s in got:
        assert support(tx, s) >= min_support
