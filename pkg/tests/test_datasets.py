import numpy as np
import pytest

from lxdr.datasets import (Dataset, load_bundled, load_csv, standardize,
                           subsample, train_test_split)


def test_bundled_shapes(iris, diabetes, digits):
    assert iris.features.shape == (150, 4)
    assert len(np.unique(iris.target)) == 3
    assert diabetes.features.shape == (442, 10)
    assert digits.features.shape == (1797, 64)
    assert len(np.unique(digits.target)) == 10


def test_bundled_unknown_name():
    with pytest.raises(ValueError, match="unknown bundled"):
        load_bundled("wine")


def test_load_csv_with_header(tmp_path):
    p = tmp_path / "t.csv"
    p.write_text("a,b\n1,2\n3,4\n")
    d = load_csv(p)
    assert d.features.shape == (2, 2)
    assert d.feature_names == ["a", "b"]
    assert d.target is None


def test_load_csv_no_header(tmp_path):
    p = tmp_path / "t.csv"
    p.write_text("1,2,3\n4,5,6\n")
    d = load_csv(p, has_header=False)
    assert d.features.shape == (2, 3)
    assert d.feature_names == ["f0", "f1", "f2"]


def test_load_csv_crlf_and_target(tmp_path):
    p = tmp_path / "t.csv"
    p.write_bytes(b"x,y,target\r\n1,2,9\r\n3,4,8\r\n")
    d = load_csv(p, target_column="target")
    assert d.features.shape == (2, 2)
    np.testing.assert_array_equal(d.target, [9.0, 8.0])


def test_load_csv_bad_cell_names_row_col(tmp_path):
    p = tmp_path / "t.csv"
    p.write_text("a,b\n1,2\n3,x\n")
    with pytest.raises(ValueError, match=r"row 3, column 2"):
        load_csv(p)


def test_load_csv_ragged_row(tmp_path):
    p = tmp_path / "t.csv"
    p.write_text("a,b\n1,2\n3\n")
    with pytest.raises(ValueError, match="row 3"):
        load_csv(p)


def test_load_csv_empty(tmp_path):
    p = tmp_path / "t.csv"
    p.write_text("")
    with pytest.raises(ValueError, match="empty"):
        load_csv(p)


def test_load_csv_non_finite(tmp_path):
    p = tmp_path / "t.csv"
    p.write_text("a\n1\nnan\n")
    with pytest.raises(ValueError, match="non-finite"):
        load_csv(p)


def test_csv_round_trip_exact(tmp_path):
    rng = np.random.default_rng(3)
    X = rng.standard_normal((12, 5))
    p = tmp_path / "r.csv"
    header = ",".join(f"c{j}" for j in range(5))
    body = "\n".join(",".join(repr(float(v)) for v in row) for row in X)
    p.write_text(header + "\n" + body + "\n")
    d = load_csv(p)
    np.testing.assert_array_equal(d.features, X)  # bit-exact round trip


def test_subsample_digits_size(digits):
    sub = subsample(digits, 0.25, seed=0)
    assert sub.features.shape == (449, 64)
    assert sub.target.shape == (449,)


def test_subsample_identity_and_determinism(iris):
    full = subsample(iris, 1.0, seed=5)
    np.testing.assert_array_equal(full.features, iris.features)
    a = subsample(iris, 0.3, seed=9)
    b = subsample(iris, 0.3, seed=9)
    np.testing.assert_array_equal(a.features, b.features)


def test_subsample_keeps_row_order(iris):
    sub = subsample(iris, 0.2, seed=1)
    # each sampled row must appear in the original in the same relative order
    idx = [np.flatnonzero((iris.features == row).all(axis=1))[0]
           for row in sub.features]
    assert idx == sorted(idx)


def test_split_sizes_and_union(diabetes):
    train, test = train_test_split(diabetes, 0.8, seed=42)
    assert train.features.shape[0] == 354
    assert test.features.shape[0] == 88
    merged = np.vstack([train.features, test.features])
    assert (np.sort(merged, axis=0) ==
            np.sort(diabetes.features, axis=0)).all()


def test_split_determinism(iris):
    a, _ = train_test_split(iris, 0.8, seed=7)
    b, _ = train_test_split(iris, 0.8, seed=7)
    np.testing.assert_array_equal(a.features, b.features)
    c, _ = train_test_split(iris, 0.8, seed=8)
    assert not np.array_equal(a.features, c.features)


def test_split_rejects_degenerate():
    d = Dataset("tiny", np.arange(8.0).reshape(4, 2))
    with pytest.raises(ValueError):
        train_test_split(d, 0.95, seed=0)


def test_standardize_moments(diabetes):
    std, rec = standardize(diabetes)
    np.testing.assert_allclose(std.features.mean(axis=0), 0.0, atol=1e-10)
    np.testing.assert_allclose(std.features.std(axis=0), 1.0, atol=1e-10)
    back = rec.inverse(std.features)
    np.testing.assert_allclose(back, diabetes.features, atol=1e-10)


def test_standardize_constant_column():
    X = np.array([[1.0, 5.0], [2.0, 5.0], [3.0, 5.0]])
    std, rec = standardize(Dataset("c", X))
    np.testing.assert_array_equal(std.features[:, 1], 0.0)
    assert rec.constant.tolist() == [False, True]
    np.testing.assert_allclose(rec.inverse(std.features), X, atol=1e-12)
