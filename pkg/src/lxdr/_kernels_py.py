"""Pure-numpy implementations of the numeric hot-path kernels.

Used whenever the compiled extension (``lxdr._kernels``) is unavailable or
explicitly disabled; see :mod:`lxdr.backend`. Both implementations must agree
to floating-point rounding (asserted by the test suite).
"""

import numpy as np


def row_sq_dists(X, q):
    """Squared Euclidean distance from each row of X to the vector q."""
    X = np.asarray(X, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    if X.ndim != 2 or q.ndim != 1 or X.shape[1] != q.shape[0]:
        raise ValueError(f"shape mismatch: X {X.shape} vs q {q.shape}")
    diff = X - q
    return np.einsum("ij,ij->i", diff, diff)


def pairwise_sq_dists(A, B):
    """All squared Euclidean distances between rows of A and rows of B."""
    A = np.asarray(A, dtype=np.float64)
    B = np.asarray(B, dtype=np.float64)
    if A.ndim != 2 or B.ndim != 2 or A.shape[1] != B.shape[1]:
        raise ValueError(f"shape mismatch: A {A.shape} vs B {B.shape}")
    na = np.einsum("ij,ij->i", A, A)
    nb = np.einsum("ij,ij->i", B, B)
    D = na[:, None] + nb[None, :] - 2.0 * (A @ B.T)
    # the expanded form can go slightly negative through cancellation
    np.maximum(D, 0.0, out=D)
    return D


def rbf_kernel(A, B, gamma):
    """RBF (Gaussian) kernel matrix exp(-gamma * ||a - b||^2)."""
    return np.exp(-gamma * pairwise_sq_dists(A, B))


def weighted_gram(Xc, w, Tc, alpha):
    """Normal-equation blocks for weighted ridge on pre-centered data.

    Returns ``(G, R)`` with ``G = Xc' diag(w) Xc + alpha I`` and
    ``R = Xc' diag(w) Tc``.
    """
    Xc = np.asarray(Xc, dtype=np.float64)
    Tc = np.asarray(Tc, dtype=np.float64)
    w = np.asarray(w, dtype=np.float64)
    if Xc.shape[0] != w.shape[0] or Tc.shape[0] != w.shape[0]:
        raise ValueError(
            f"row mismatch: Xc {Xc.shape}, Tc {Tc.shape}, w {w.shape}")
    sw = np.sqrt(w)[:, None]
    Xs = Xc * sw
    G = Xs.T @ Xs
    if alpha != 0.0:
        G.flat[:: G.shape[0] + 1] += alpha
    R = Xs.T @ (Tc * sw)
    return G, R
