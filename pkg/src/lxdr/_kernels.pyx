# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled numeric kernels for the explanation hot path.

Same contract as :mod:`lxdr._kernels_py`. Matrix products go through BLAS
(via scipy's cython bindings) so the compiled path never falls behind numpy
at large sizes; the win comes from fusing the scaling/centering passes and
skipping intermediate arrays.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport exp
from scipy.linalg.cython_blas cimport dgemm, dsyrk

cnp.import_array()


def row_sq_dists(X, q):
    """Squared Euclidean distance from each row of X to the vector q."""
    X = np.ascontiguousarray(X, dtype=np.float64)
    q = np.ascontiguousarray(q, dtype=np.float64)
    if X.ndim != 2 or q.ndim != 1 or X.shape[1] != q.shape[0]:
        raise ValueError(f"shape mismatch: X {X.shape} vs q {q.shape}")
    cdef double[:, ::1] Xv = X
    cdef double[::1] qv = q
    cdef Py_ssize_t m = Xv.shape[0], n = Xv.shape[1], i, j
    out = np.empty(m, dtype=np.float64)
    cdef double[::1] ov = out
    cdef double acc, d
    for i in range(m):
        acc = 0.0
        for j in range(n):
            d = Xv[i, j] - qv[j]
            acc += d * d
        ov[i] = acc
    return out


cdef _cross_minus2(double[:, ::1] A, double[:, ::1] B, double[:, ::1] D):
    # D (ma x mb, row-major) := -2 * A @ B.T via Fortran-order dgemm on the
    # transposed views.
    cdef int ma = <int> A.shape[0], mb = <int> B.shape[0], n = <int> A.shape[1]
    cdef double alpha = -2.0, beta = 0.0
    dgemm(b"T", b"N", &mb, &ma, &n, &alpha, &B[0, 0], &n, &A[0, 0], &n,
          &beta, &D[0, 0], &mb)


def pairwise_sq_dists(A, B):
    """All squared Euclidean distances between rows of A and rows of B."""
    A = np.ascontiguousarray(A, dtype=np.float64)
    B = np.ascontiguousarray(B, dtype=np.float64)
    if A.ndim != 2 or B.ndim != 2 or A.shape[1] != B.shape[1]:
        raise ValueError(f"shape mismatch: A {A.shape} vs B {B.shape}")
    cdef double[:, ::1] Av = A, Bv = B
    cdef Py_ssize_t ma = Av.shape[0], mb = Bv.shape[0], n = Av.shape[1], i, j
    D = np.empty((ma, mb), dtype=np.float64)
    cdef double[:, ::1] Dv = D
    na_arr = np.empty(ma, dtype=np.float64)
    nb_arr = np.empty(mb, dtype=np.float64)
    cdef double[::1] na = na_arr, nb = nb_arr
    cdef double acc, v
    for i in range(ma):
        acc = 0.0
        for j in range(n):
            acc += Av[i, j] * Av[i, j]
        na[i] = acc
    for i in range(mb):
        acc = 0.0
        for j in range(n):
            acc += Bv[i, j] * Bv[i, j]
        nb[i] = acc
    if ma > 0 and mb > 0 and n > 0:
        _cross_minus2(Av, Bv, Dv)
    else:
        D.fill(0.0)
    for i in range(ma):
        for j in range(mb):
            v = Dv[i, j] + na[i] + nb[j]
            Dv[i, j] = v if v > 0.0 else 0.0
    return D


def rbf_kernel(A, B, double gamma):
    """RBF (Gaussian) kernel matrix exp(-gamma * ||a - b||^2)."""
    D = pairwise_sq_dists(A, B)
    cdef double[:, ::1] Dv = D
    cdef Py_ssize_t i, j
    for i in range(Dv.shape[0]):
        for j in range(Dv.shape[1]):
            Dv[i, j] = exp(-gamma * Dv[i, j])
    return D


def weighted_gram(Xc, w, Tc, double alpha):
    """Normal-equation blocks (G, R) for weighted ridge on centered data.

    G = Xc' diag(w) Xc + alpha I, R = Xc' diag(w) Tc.
    """
    Xc = np.ascontiguousarray(Xc, dtype=np.float64)
    Tc = np.ascontiguousarray(Tc, dtype=np.float64)
    w = np.ascontiguousarray(w, dtype=np.float64)
    if Xc.shape[0] != w.shape[0] or Tc.shape[0] != w.shape[0]:
        raise ValueError(
            f"row mismatch: Xc {Xc.shape}, Tc {Tc.shape}, w {w.shape}")
    cdef double[:, ::1] Xv = Xc, Tv = Tc
    cdef double[::1] wv = w
    cdef Py_ssize_t m = Xv.shape[0], i, j
    cdef int n = <int> Xv.shape[1], k = <int> Tv.shape[1], mm = <int> m
    Xs_arr = np.empty((m, n), dtype=np.float64)
    Ts_arr = np.empty((m, k), dtype=np.float64)
    cdef double[:, ::1] Xs = Xs_arr, Ts = Ts_arr
    cdef double sw
    for i in range(m):
        sw = wv[i] ** 0.5
        for j in range(n):
            Xs[i, j] = Xv[i, j] * sw
        for j in range(k):
            Ts[i, j] = Tv[i, j] * sw
    G = np.zeros((n, n), dtype=np.float64)
    R = np.zeros((n, k), dtype=np.float64)
    cdef double[:, ::1] Gv = G, Rv = R
    cdef double one = 1.0, zero = 0.0
    if m > 0 and n > 0:
        # Fortran view of row-major Xs is Xs.T (n x m); SYRK then yields
        # Xs.T @ Xs in the lower Fortran triangle = upper row-major triangle.
        dsyrk(b"L", b"N", &n, &mm, &one, &Xs[0, 0], &n, &zero, &Gv[0, 0], &n)
        if k > 0:
            dgemm(b"N", b"T", &k, &n, &mm, &one, &Ts[0, 0], &k, &Xs[0, 0], &n,
                  &zero, &Rv[0, 0], &k)
    for i in range(n):
        for j in range(i):
            Gv[i, j] = Gv[j, i]
        Gv[i, i] += alpha
    return G, R
