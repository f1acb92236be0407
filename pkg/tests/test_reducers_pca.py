import numpy as np
import pytest

from lxdr.reducers import (components_for_variance, dr_transform, pca_fit,
                           pca_inverse, pca_transform)


def _eig3_oracle(S):
    """Eigenpairs of a symmetric 3x3 via characteristic-polynomial roots.

    Deliberately avoids np.linalg.eigh: the cubic det(S - l*I) = 0 is solved
    by np.roots, eigenvectors come from null spaces of (S - l*I).
    """
    a = -1.0
    b = np.trace(S)
    c = -0.5 * (np.trace(S) ** 2 - np.trace(S @ S))
    d = np.linalg.det(S)
    lams = np.sort(np.roots([a, b, c, d]).real)[::-1]
    vecs = []
    for lam in lams:
        M = S - lam * np.eye(3)
        # the null vector is the right singular vector of the smallest
        # singular value
        _, _, Vt = np.linalg.svd(M)
        v = Vt[-1]
        if v[np.argmax(np.abs(v))] < 0:
            v = -v
        vecs.append(v)
    return lams, np.array(vecs)


def test_components_match_characteristic_polynomial_oracle():
    rng = np.random.default_rng(21)
    X = rng.standard_normal((50, 3)) @ np.diag([3.0, 1.5, 0.4])
    model = pca_fit(X, 3)

    Xc = X - X.mean(axis=0)
    S = Xc.T @ Xc / (X.shape[0] - 1)
    lams, vecs = _eig3_oracle(S)
    np.testing.assert_allclose(model.components, vecs, atol=1e-6)
    # ratios follow the same spectrum
    np.testing.assert_allclose(model.explained_variance_ratio,
                               lams / lams.sum(), atol=1e-8)


def test_axis_aligned_covariance():
    rng = np.random.default_rng(22)
    X = rng.standard_normal((4000, 2)) * np.array([2.0, 1.0])
    model = pca_fit(X, 2)
    # first component hugs the high-variance axis, sign convention makes
    # the dominant entry positive
    assert abs(model.components[0, 0]) > 0.99
    assert model.components[0, np.argmax(np.abs(model.components[0]))] > 0


def test_iris_first_component(iris):
    model = pca_fit(iris.features, 3)
    np.testing.assert_allclose(model.components[0],
                               [0.361, -0.085, 0.857, 0.358], atol=2e-3)


def test_orthonormal_rows(iris):
    model = pca_fit(iris.features, 4)
    gram = model.components @ model.components.T
    np.testing.assert_allclose(gram, np.eye(4), atol=1e-8)
    assert np.all(np.diff(model.explained_variance_ratio) <= 1e-12)
    assert model.explained_variance_ratio.sum() == pytest.approx(1.0,
                                                                 abs=1e-8)


def test_transform_of_mean_is_zero(iris):
    model = pca_fit(iris.features, 2)
    np.testing.assert_allclose(pca_transform(model, model.mean), 0.0,
                               atol=1e-12)


def test_full_rank_round_trip():
    rng = np.random.default_rng(23)
    X = rng.standard_normal((30, 5))
    model = pca_fit(X, 5)
    x = rng.standard_normal(5)
    np.testing.assert_allclose(pca_inverse(model, pca_transform(model, x)),
                               x, atol=1e-10)


def test_inverse_of_zero_is_mean(iris):
    model = pca_fit(iris.features, 2)
    np.testing.assert_allclose(pca_inverse(model, np.zeros(2)), model.mean,
                               atol=1e-12)


def test_truncated_round_trip_is_projection():
    rng = np.random.default_rng(24)
    X = rng.standard_normal((20, 4))
    model = pca_fit(X, 2)
    P = model.components.T @ model.components   # projector onto the span
    for x in X[:5]:
        back = pca_inverse(model, pca_transform(model, x))
        np.testing.assert_allclose(back,
                                   P @ (x - model.mean) + model.mean,
                                   atol=1e-10)


def test_zero_covariance_rejected():
    X = np.ones((10, 3))
    with pytest.raises(ValueError, match="tied"):
        pca_fit(X, 2)


def test_shape_errors(iris):
    model = pca_fit(iris.features, 2)
    with pytest.raises(ValueError):
        pca_transform(model, np.zeros(5))
    with pytest.raises(ValueError):
        pca_inverse(model, np.zeros(3))
    with pytest.raises(ValueError):
        pca_fit(iris.features, 0)
    with pytest.raises(ValueError):
        pca_fit(iris.features, 9)


def test_batch_transform(iris):
    model = pca_fit(iris.features, 3)
    out = dr_transform(model, iris.features[:7])
    assert out.shape == (7, 3)
    np.testing.assert_allclose(out[0], pca_transform(model,
                                                     iris.features[0]),
                               atol=1e-12)
    empty = dr_transform(model, np.empty((0, 4)))
    assert empty.shape == (0, 3)


def test_variance_rule(iris, diabetes):
    # smallest count whose cumulative ratio reaches the threshold
    assert components_for_variance(iris.features, 0.95) == 2
    assert components_for_variance(iris.features, 0.99) == 3
    assert components_for_variance(diabetes.features, 0.95) == 8
    m = pca_fit(diabetes.features, 8)
    assert m.explained_variance_ratio.sum() >= 0.95
