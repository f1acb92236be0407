"""Kernel PCA with an RBF kernel and out-of-sample projection.

Fitting eigendecomposes the double-centered training kernel matrix. The
uncentered kernel row means and grand mean are kept so that a new point x
can be projected consistently:

    k_i   = exp(-gamma * ||x - t_i||^2)
    k~_i  = k_i - mean_j(k_j) - row_mean_i + grand_mean
    x'    = alphas.T @ k~

where alphas holds the eigenvectors scaled by 1/sqrt(eigenvalue). A
training row projected out-of-sample reproduces its in-sample coordinates
exactly (the centering terms collapse to the centered kernel row).
"""

from dataclasses import dataclass

import numpy as np

from ..backend import rbf_kernel
from .pca import _check_matrix, _check_vector

# eigenvalues at or below this are treated as numerically zero
_EIG_TOL = 1e-10


@dataclass
class KpcaModel:
    training_rows: np.ndarray     # (m, n) retained support data
    gamma: float
    alphas: np.ndarray            # (m, n_r), column j scaled by 1/sqrt(l_j)
    kernel_row_means: np.ndarray  # (m,) means of the uncentered kernel
    kernel_grand_mean: float
    seed: int = 0

    kind = "kpca-rbf"

    @property
    def input_dims(self):
        return self.training_rows.shape[1]

    @property
    def reduced_dims(self):
        return self.alphas.shape[1]


def kpca_fit(data, n_components, gamma=None):
    """Fit RBF kernel PCA; `gamma` defaults to 1/n_features."""
    X = _check_matrix(data)
    m, n = X.shape
    if not 1 <= n_components <= m:
        raise ValueError(f"n_components must be in [1, {m}], "
                         f"got {n_components}")
    if gamma is None:
        gamma = 1.0 / n
    gamma = float(gamma)
    if gamma <= 0:
        raise ValueError(f"gamma must be positive, got {gamma}")

    K = rbf_kernel(X, X, gamma)
    row_means = K.mean(axis=1)
    grand = float(K.mean())
    Kc = K - row_means[:, None] - row_means[None, :] + grand

    lam, vec = np.linalg.eigh(Kc)          # ascending
    lam, vec = lam[::-1], vec[:, ::-1]
    positive = lam > _EIG_TOL
    if positive.sum() < n_components:
        raise ValueError(
            f"only {int(positive.sum())} positive kernel eigenvalues "
            f"available, cannot retain {n_components} components")

    lam = lam[:n_components]
    vec = vec[:, :n_components].copy()
    for j in range(n_components):
        col = vec[:, j]
        if col[np.argmax(np.abs(col))] < 0:
            col *= -1.0
    alphas = vec / np.sqrt(lam)

    return KpcaModel(training_rows=X.copy(), gamma=gamma, alphas=alphas,
                     kernel_row_means=row_means, kernel_grand_mean=grand)


def kpca_transform(model, x):
    """Project one instance through the centered-kernel map."""
    x = _check_vector(x, model.input_dims)
    k = rbf_kernel(x[None, :], model.training_rows, model.gamma)[0]
    kc = (k - k.mean() - model.kernel_row_means + model.kernel_grand_mean)
    return kc @ model.alphas


def kpca_transform_batch(model, B):
    B = _check_matrix(B)
    if B.shape[1] != model.input_dims:
        raise ValueError(f"batch has {B.shape[1]} columns, model expects "
                         f"{model.input_dims}")
    if B.shape[0] == 0:
        return np.empty((0, model.reduced_dims))
    K = rbf_kernel(B, model.training_rows, model.gamma)
    Kc = (K - K.mean(axis=1)[:, None] - model.kernel_row_means[None, :]
          + model.kernel_grand_mean)
    return Kc @ model.alphas
