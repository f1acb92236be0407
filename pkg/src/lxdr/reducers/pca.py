"""Principal component analysis via thin SVD of the centered data."""

from dataclasses import dataclass

import numpy as np


@dataclass
class PcaModel:
    components: np.ndarray                # (n_r, n), orthonormal rows
    mean: np.ndarray                      # (n,)
    explained_variance_ratio: np.ndarray  # (n_r,), descending
    seed: int = 0

    kind = "pca"

    @property
    def input_dims(self):
        return self.components.shape[1]

    @property
    def reduced_dims(self):
        return self.components.shape[0]


def _check_matrix(X):
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2:
        raise ValueError(f"expected a 2-D data matrix, got shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise ValueError("data contains NaN or Inf")
    return X


def pca_fit(data, n_components):
    """Fit the top `n_components` principal directions.

    Components are the leading right singular vectors of the centered data,
    ordered by decreasing variance; each row is sign-flipped so its
    largest-magnitude entry is positive, which keeps component tables stable
    across runs.
    """
    X = _check_matrix(data)
    m, n = X.shape
    if m < 2:
        raise ValueError(f"need at least 2 rows to fit PCA, got {m}")
    if not 1 <= n_components <= n:
        raise ValueError(f"n_components must be in [1, {n}], "
                         f"got {n_components}")

    mean = X.mean(axis=0)
    Xc = X - mean
    if not Xc.any():
        raise ValueError("zero covariance: all rows identical, "
                         "every component is tied")

    _, s, Vt = np.linalg.svd(Xc, full_matrices=False)
    var = s ** 2
    ratio = var / var.sum()

    comps = Vt[:n_components].copy()
    for row in comps:
        if row[np.argmax(np.abs(row))] < 0:
            row *= -1.0
    return PcaModel(components=comps, mean=mean,
                    explained_variance_ratio=ratio[:n_components])


def _check_vector(x, n, what="x"):
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (n,):
        raise ValueError(f"{what} must have shape ({n},), got {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ValueError(f"{what} contains NaN or Inf")
    return x


def pca_transform(model, x):
    """Project one instance: components @ (x - mean)."""
    x = _check_vector(x, model.input_dims)
    return model.components @ (x - model.mean)


def pca_inverse(model, x_reduced):
    """Map a reduced vector back: components.T @ x_reduced + mean."""
    xr = _check_vector(x_reduced, model.reduced_dims, "x_reduced")
    return xr @ model.components + model.mean


def components_for_variance(data, threshold=0.95):
    """Smallest component count whose cumulative explained-variance ratio
    reaches `threshold`."""
    if not 0.0 < threshold <= 1.0:
        raise ValueError(f"threshold must be in (0, 1], got {threshold}")
    X = _check_matrix(data)
    full = pca_fit(X, min(X.shape))
    cum = np.cumsum(full.explained_variance_ratio)
    hit = np.nonzero(cum >= threshold - 1e-12)[0]
    if hit.size == 0:
        return int(cum.size)
    return int(hit[0]) + 1
