import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from timelime.data import MetricRecord
from timelime.preprocess import PreprocessingError, SmoteConfig, smote, smote_arrays


def test_two_point_segment():
    X = np.array([[5.0, 2.0], [4.0, 3.0], [0.0, 0.0], [1.0, 1.0]])
    y = np.array([False, False, True, True])
    X = np.vstack([X, [[6.0, 1.0]]])
    y = np.append(y, False)
    Xo, yo, n_new = smote_arrays(X, y, SmoteConfig(k_neighbors=1, seed=3))
    assert n_new == 1
    s = Xo[-1]
    assert yo[-1]
    assert s[0] == pytest.approx(s[1]) and 0 <= s[0] <= 1


def test_counts_balance():
    rng = np.random.default_rng(0)
    X = rng.random((15, 3))
    y = np.array([False] * 10 + [True] * 5)
    Xo, yo, _ = smote_arrays(X, y)
    assert (~yo).sum() == 10 and yo.sum() == 10
    assert np.array_equal(Xo[:15], X)


def test_ratio():
    X = np.random.default_rng(1).random((30, 2))
    y = np.array([False] * 20 + [True] * 10)
    _, yo, _ = smote_arrays(X, y, SmoteConfig(target_ratio=0.75))
    assert yo.sum() == round(0.75 * 20)


def test_deterministic():
    X = np.random.default_rng(2).random((40, 4))
    y = np.arange(40) % 4 == 0
    a = smote_arrays(X, y, SmoteConfig(seed=11))[0]
    b = smote_arrays(X, y, SmoteConfig(seed=11))[0]
    assert a.tobytes() == b.tobytes()


def test_errors():
    X = np.zeros((4, 2))
    with pytest.raises(PreprocessingError):
        smote_arrays(X, np.array([True] * 4))
    with pytest.raises(PreprocessingError):
        smote_arrays(X, np.array([True, False, False, False]))
    with pytest.raises(ValueError):
        SmoteConfig(k_neighbors=0)
    with pytest.raises(ValueError):
        SmoteConfig(target_ratio=1.5)


def test_record_wrapper_keeps_originals():
    recs = [MetricRecord(f"f{i}", tuple([float(i)] * 20), int(i < 3)) for i in range(8)]
    out = smote(recs, SmoteConfig(seed=0))
    assert out[:8] == recs
    assert sum(r.defective for r in out) == 5
    assert all(r.file_name.startswith("smote#") for r in out[8:])


@given(
    arrays(np.float64, (12, 3), elements=st.floats(0, 1)),
    st.integers(2, 5),
    st.integers(1, 6),
    st.integers(0, 2**32 - 1),
)
@settings(max_examples=50, deadline=None)
def test_synthetic_in_minority_box(X, n_min, k, seed):
    y = np.zeros(12, dtype=bool)
    y[:n_min] = True
    Xo, yo, n_new = smote_arrays(X, y, SmoteConfig(k_neighbors=k, seed=seed))
    minority = X[y]
    syn = Xo[12:]
    assert n_new == 12 - n_min - n_min
    assert np.all(syn >= minority.min(axis=0) - 1e-12)
    assert np.all(syn <= minority.max(axis=0) + 1e-12)
    assert np.array_equal(Xo[:12][~y], X[~y])
