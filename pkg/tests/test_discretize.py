import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import mdlp_exhaustive
from timelime.discretize import BinScheme, fayyad_irani, fit_bins, quartile_cuts


def test_clean_split():
    assert fayyad_irani([1, 2, 3, 4, 5, 6], [0, 0, 0, 1, 1, 1]) == [3.5]


def test_single_class_no_cuts():
    assert fayyad_irani([1, 2, 3, 4], [1, 1, 1, 1]) == []


def test_interleaved_matches_oracle():
    # frozen from the exhaustive oracle: MDL rejects every split here
    assert fayyad_irani([1, 2, 3, 4], [0, 1, 0, 1]) == mdlp_exhaustive([1, 2, 3, 4], [0, 1, 0, 1]) == []


def test_recursive_cut_frozen():
    vals = list(range(40))
    labels = [0] * 10 + [1] * 10 + [0] * 10 + [1] * 10
    assert fayyad_irani(vals, labels) == [9.5]


def test_length_mismatch():
    with pytest.raises(ValueError):
        fayyad_irani([1, 2], [0])


fixture = st.integers(2, 40).flatmap(
    lambda n: st.tuples(
        st.lists(st.integers(0, 11), min_size=n, max_size=n),
        st.lists(st.integers(0, 1), min_size=n, max_size=n),
    )
)


@given(fixture)
@settings(max_examples=150, deadline=None)
def test_matches_exhaustive_oracle(data):
    vals, labels = data
    vals = [v / 11 for v in vals]
    assert fayyad_irani(vals, labels) == pytest.approx(mdlp_exhaustive(vals, labels))


@given(fixture, st.randoms(use_true_random=False))
@settings(max_examples=60, deadline=None)
def test_permutation_invariant(data, rnd):
    vals, labels = data
    pairs = list(zip(vals, labels))
    rnd.shuffle(pairs)
    assert fayyad_irani(vals, labels) == fayyad_irani([p[0] for p in pairs], [p[1] for p in pairs])


@given(fixture)
@settings(max_examples=80, deadline=None)
def test_cuts_between_differing_labels(data):
    vals, labels = data
    for c in fayyad_irani(vals, labels):
        below = max(v for v in vals if v < c)
        above = min(v for v in vals if v > c)
        group = {l for v, l in zip(vals, labels) if v in (below, above)}
        assert len(group) == 2


def test_quartiles():
    assert quartile_cuts([1, 2, 3, 4]) == [1.75, 2.5, 3.25]
    assert quartile_cuts(list(range(100))) == [24.75, 49.5, 74.25]
    assert quartile_cuts([2, 2, 2, 2, 2]) == []
    assert quartile_cuts([0, 0, 0, 0, 0, 1]) == [0.0]


def test_bin_scheme_lookup():
    b = BinScheme(((0.2, 0.5), ()))
    assert b.n_bins(0) == 3 and b.n_bins(1) == 1
    assert [b.bin_of(0, v) for v in (0.0, 0.2, 0.3, 0.5, 0.9, 1.0)] == [0, 0, 1, 1, 2, 2]
    assert b.interval(0, 0) == (0.0, 0.2)
    assert b.interval(0, 2) == (0.5, 1.0)
    assert b.interval(1, 0) == (0.0, 1.0)
    assert not b.explainable(1)
    with pytest.raises(ValueError):
        BinScheme(((0.5, 0.5),))


@given(st.lists(st.floats(0, 1), min_size=1, max_size=5, unique=True), st.floats(0, 1))
def test_bin_of_total_and_contained(cuts, v):
    b = BinScheme((tuple(sorted(cuts)),))
    k = b.bin_of(0, v)
    assert 0 <= k < b.n_bins(0)
    lo, hi = b.interval(0, k)
    assert lo <= v <= hi


def test_fit_bins_fallback():
    rng = np.random.default_rng(0)
    X = np.column_stack([np.linspace(0, 1, 20), rng.random(20), np.full(20, 0.3)])
    y = np.arange(20) >= 10
    b = fit_bins(X, y)
    assert b.cuts[0] == (pytest.approx(0.5),)
    assert len(b.cuts[1]) >= 1  # supervised or quartile fallback
    assert b.cuts[2] == ()
