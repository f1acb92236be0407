"""Numeric kernel contract, checked identically on every available backend."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lxdr.backend import available_backends

BACKENDS = sorted(available_backends().items())


def pytest_generate_tests(metafunc):
    if "kern" in metafunc.fixturenames:
        metafunc.parametrize("kern", [mod for _, mod in BACKENDS],
                             ids=[name for name, _ in BACKENDS])


def test_compiled_backend_present():
    # the extension is part of the build; fail loudly if it silently vanished
    assert "python" in dict(BACKENDS)
    assert "compiled" in dict(BACKENDS), \
        "compiled kernel extension did not build"


def test_row_sq_dists_matches_loop(kern):
    rng = np.random.default_rng(7)
    X = rng.standard_normal((23, 5))
    q = rng.standard_normal(5)
    expected = [sum((X[i, j] - q[j]) ** 2 for j in range(5))
                for i in range(23)]
    np.testing.assert_allclose(kern.row_sq_dists(X, q), expected, atol=1e-12)


def test_row_sq_dists_shape_error(kern):
    with pytest.raises(ValueError):
        kern.row_sq_dists(np.zeros((3, 4)), np.zeros(5))


def test_pairwise_matches_loop(kern):
    rng = np.random.default_rng(8)
    A = rng.standard_normal((6, 3))
    B = rng.standard_normal((9, 3))
    D = kern.pairwise_sq_dists(A, B)
    assert D.shape == (6, 9)
    for i in range(6):
        for j in range(9):
            assert D[i, j] == pytest.approx(np.sum((A[i] - B[j]) ** 2),
                                            abs=1e-10)


def test_pairwise_self_diag_zero(kern):
    rng = np.random.default_rng(9)
    A = rng.standard_normal((12, 4))
    D = kern.pairwise_sq_dists(A, A)
    np.testing.assert_allclose(np.diag(D), 0.0, atol=1e-10)
    assert (D >= 0).all()


def test_rbf_kernel_value(kern):
    A = np.array([[0.0, 0.0], [1.0, 1.0]])
    K = kern.rbf_kernel(A, A, 0.5)
    assert K[0, 0] == pytest.approx(1.0)
    assert K[0, 1] == pytest.approx(np.exp(-0.5 * 2.0))


def test_weighted_gram_matches_dense(kern):
    rng = np.random.default_rng(10)
    Xc = rng.standard_normal((15, 4))
    w = rng.uniform(0.2, 2.0, 15)
    Tc = rng.standard_normal((15, 3))
    G, R = kern.weighted_gram(Xc, w, Tc, 0.3)
    lam = np.diag(w)
    np.testing.assert_allclose(G, Xc.T @ lam @ Xc + 0.3 * np.eye(4),
                               atol=1e-10)
    np.testing.assert_allclose(R, Xc.T @ lam @ Tc, atol=1e-10)


def test_weighted_gram_alpha_zero(kern):
    rng = np.random.default_rng(11)
    Xc = rng.standard_normal((8, 3))
    w = np.ones(8)
    G, _ = kern.weighted_gram(Xc, w, Xc[:, :1], 0.0)
    np.testing.assert_allclose(G, Xc.T @ Xc, atol=1e-10)


def test_backends_agree():
    mods = dict(BACKENDS)
    if len(mods) < 2:
        pytest.skip("only one backend available")
    rng = np.random.default_rng(12)
    A = rng.standard_normal((31, 7))
    B = rng.standard_normal((17, 7))
    q = rng.standard_normal(7)
    w = rng.uniform(0.1, 1.0, 31)
    T = rng.standard_normal((31, 4))
    py, cy = mods["python"], mods["compiled"]
    np.testing.assert_allclose(cy.row_sq_dists(A, q), py.row_sq_dists(A, q),
                               rtol=1e-12, atol=1e-12)
    np.testing.assert_allclose(cy.pairwise_sq_dists(A, B),
                               py.pairwise_sq_dists(A, B),
                               rtol=1e-10, atol=1e-12)
    np.testing.assert_allclose(cy.rbf_kernel(A, B, 0.25),
                               py.rbf_kernel(A, B, 0.25),
                               rtol=1e-12, atol=1e-14)
    Gc, Rc = cy.weighted_gram(A, w, T, 0.7)
    Gp, Rp = py.weighted_gram(A, w, T, 0.7)
    np.testing.assert_allclose(Gc, Gp, rtol=1e-12, atol=1e-12)
    np.testing.assert_allclose(Rc, Rp, rtol=1e-12, atol=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 12), st.integers(1, 12), st.integers(1, 6),
       st.integers(0, 2 ** 32 - 1))
def test_pairwise_nonnegative_and_symmetric(ma, mb, n, seed):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((ma, n))
    B = rng.standard_normal((mb, n))
    for _, kern in BACKENDS:
        D = kern.pairwise_sq_dists(A, B)
        assert D.shape == (ma, mb)
        assert (D >= 0).all()
        np.testing.assert_allclose(D, kern.pairwise_sq_dists(B, A).T,
                                   rtol=1e-10, atol=1e-12)


def test_env_var_forces_python_backend():
    import subprocess
    import sys
    code = "import lxdr.backend as b; print(b.BACKEND)"
    out = subprocess.run([sys.executable, "-c", code],
                         env={"PATH": "/usr/bin:/bin", "LXDR_BACKEND":
                              "python"},
                         capture_output=True, text=True)
    assert out.stdout.strip() == "python", out.stderr
