import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from timelime.data import (
    METRICS,
    EmptyTripleWarning,
    MetricRecord,
    NormalizationMap,
    ParseError,
    Release,
    SchemaError,
    build_triple,
    compute_ndpv,
    load_release,
    normalize,
    read_manifest,
    release_from_arrays,
)

HEADER = "name," + ",".join(METRICS) + ",bug\n"


def _row(name, values, bug):
    return f"{name}," + ",".join(str(v) for v in values) + f",{bug}\n"


def _release(vid, rows):
    names = [r[0] for r in rows]
    X = [[r[1]] * 20 for r in rows]
    return release_from_arrays(vid, names, X, [r[2] for r in rows])


def test_load_one_row(tmp_path):
    p = tmp_path / "r.csv"
    p.write_text(HEADER + _row("a.B", [0] * 20, 3))
    rel = load_release(p, "1.0")
    assert len(rel) == 1
    assert rel.records[0].defective
    assert rel.records[0].bug_count == 3


def test_load_empty(tmp_path):
    p = tmp_path / "r.csv"
    p.write_text(HEADER)
    rel = load_release(p, "1.0")
    assert len(rel) == 0
    assert rel.feature_bounds is None


def test_missing_column_named(tmp_path):
    p = tmp_path / "r.csv"
    p.write_text(HEADER.replace(",cam", ""))
    with pytest.raises(SchemaError, match="cam"):
        load_release(p)


def test_non_numeric_reports_row(tmp_path):
    p = tmp_path / "r.csv"
    p.write_text(HEADER + _row("a", [1] * 20, 0) + _row("b", ["x"] + [1] * 19, 0))
    with pytest.raises(ParseError, match="row 1"):
        load_release(p)


def test_promise_style_header(tmp_path):
    # duplicated name column and an extra version column, upper case
    header = "NAME,version,name," + ",".join(m.upper() for m in METRICS) + ",bug\n"
    p = tmp_path / "r.csv"
    p.write_text(header + "jedit,4.0,org.X," + ",".join(["2"] * 20) + ",0\n")
    rel = load_release(p)
    assert rel.records[0].file_name == "jedit"
    assert rel.feature_bounds[0] == (2.0, 2.0)


def test_record_invariants():
    with pytest.raises(ValueError):
        MetricRecord("a", (1.0,) * 19, 0)
    with pytest.raises(ValueError):
        MetricRecord("a", (float("nan"),) + (1.0,) * 19, 0)


def test_triple_matches_shared_defective():
    x = _release("x", [("a", 1, 0), ("b", 1, 1), ("c", 1, 0), ("d", 1, 0)])
    y = _release("y", [("a", 2, 1), ("b", 2, 2), ("c", 2, 0), ("e", 2, 4)])
    z = _release("z", [("a", 3, 0), ("b", 3, 1), ("c", 3, 1), ("e", 3, 0)])
    t = build_triple(x, y, z)
    # e is absent from x, c is clean in y
    assert t.matched_files == ("a", "b")
    assert compute_ndpv(t, "a") == 1
    assert compute_ndpv(t, "b") == 1
    with pytest.raises(LookupError):
        compute_ndpv(t, "c")


def test_triple_without_defects_warns():
    x = _release("x", [("a", 1, 0)])
    y = _release("y", [("a", 1, 0)])
    z = _release("z", [("a", 1, 0)])
    with pytest.warns(EmptyTripleWarning):
        t = build_triple(x, y, z)
    assert t.matched_files == ()


def test_ndpv_zero_and_antisymmetric():
    x = _release("x", [("a", 1, 1), ("b", 1, 1)])
    y = _release("y", [("a", 1, 3), ("b", 1, 5)])
    z = _release("z", [("a", 1, 3), ("b", 1, 2)])
    t = build_triple(x, y, z)
    assert compute_ndpv(t, "a") == 0
    swapped = build_triple(x, z, y)
    assert compute_ndpv(t, "b") == -compute_ndpv(swapped, "b") == 3


def test_distinct_releases_required():
    r = _release("x", [("a", 1, 1)])
    with pytest.raises(ValueError):
        build_triple(r, r, r)


def test_normalize_examples():
    lows = tuple([0.0] * 20)
    highs = tuple([10.0] * 19 + [0.0])
    m = NormalizationMap(lows, highs)
    out = m.transform([[5.0] * 19 + [7.0], [12.0] * 19 + [0.0]])
    assert out[0, 0] == 0.5
    assert out[1, 0] == 1.0  # clamped
    assert out[0, 19] == 0.0 and out[1, 19] == 0.0  # constant feature
    assert m.constant[19] and not m.constant[0]


def test_fit_uses_given_releases(small_triple):
    m = NormalizationMap.fit([small_triple.x, small_triple.y])
    both = np.vstack([small_triple.x.matrix(), small_triple.y.matrix()])
    assert np.allclose(m.lows, both.min(axis=0))
    assert np.allclose(m.highs, both.max(axis=0))
    xn = normalize(small_triple.x, m).matrix()
    assert xn.min() >= 0 and xn.max() <= 1


@given(st.lists(st.floats(-1e3, 1e3), min_size=2, max_size=30, unique=True))
@settings(max_examples=60, deadline=None)
def test_normalize_roundtrip_monotone_idempotent(vals):
    X = np.tile(np.array(vals)[:, None], (1, 20))
    rel = release_from_arrays("r", [f"f{i}" for i in range(len(vals))], X, [0] * len(vals))
    m = NormalizationMap.fit([rel])
    Z = m.transform(X)
    assert np.allclose(m.inverse(Z), X, atol=1e-9 * max(1.0, np.abs(X).max()))
    order = np.argsort(X[:, 0])
    assert np.all(np.diff(Z[order, 0]) >= 0)
    normed = normalize(rel, m)
    again = normalize(normed, NormalizationMap.fit([normed]))
    assert np.allclose(again.matrix(), normed.matrix(), atol=1e-12)


def test_manifest(tmp_path):
    (tmp_path / "m.txt").write_text("# trials\njedit: a.csv b.csv c.csv\n\nlog4j: /abs/x.csv y.csv z.csv  # note\n")
    trials = read_manifest(tmp_path / "m.txt")
    assert [t.name for t in trials] == ["jedit", "log4j"]
    assert trials[0].paths[0] == tmp_path / "a.csv"
    assert str(trials[1].paths[0]) == "/abs/x.csv"
    (tmp_path / "bad.txt").write_text("jedit a.csv b.csv\n")
    with pytest.raises(ValueError):
        read_manifest(tmp_path / "bad.txt")


# values from the published dataset table: matched files, bugs in y and z
# over matched files, and bugs reduced
TABLE4 = {
    "jedit": (78, 216, 74, 142),
    "camel1": (210, 508, 247, 261),
    "camel2": (144, 334, 316, 18),
    "log4j": (35, 83, 120, -37),
    "xalan": (385, 529, 381, 148),
    "ant": (91, 183, 163, 20),
    "velocity": (138, 321, 144, 177),
    "poi": (247, 495, 366, 129),
    "synapse": (58, 97, 65, 32),
}


@pytest.mark.parametrize("dataset", sorted(TABLE4))
def test_published_trial_counts(real_trials, dataset):
    if dataset not in real_trials:
        pytest.skip(f"{dataset} not in manifest")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        t = real_trials[dataset].load()
    matched, bugs_y, bugs_z, reduced = TABLE4[dataset]
    assert len(t.matched_files) == matched
    assert sum(t.y.get(n).bug_count for n in t.matched_files) == bugs_y
    assert sum(t.z.get(n).bug_count for n in t.matched_files) == bugs_z
    assert sum(compute_ndpv(t, n) for n in t.matched_files) == reduced


def test_jedit_file_count(real_trials):
    if "jedit" not in real_trials:
        pytest.skip("jedit not in manifest")
    # the table's file count matches the most recent release (jedit 4.2)
    z = load_release(real_trials["jedit"].paths[2])
    assert len(z) == 367
