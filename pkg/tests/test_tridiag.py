import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.linalg import eigh_tridiagonal

import polytf
from polytf import _kernels, tridiag
from polytf.errors import NumericalError, WindowError


def test_window_indexing():
    src = polytf.jacobi(0.5, -0.5)
    a, b = src.arrays(10)
    J = polytf.build_jacobi(src, 3, 8)
    np.testing.assert_array_equal(J.diagonal, a[3:9])
    np.testing.assert_array_equal(J.offdiagonal, b[4:9])
    assert J.dim == 6
    with pytest.raises(WindowError):
        polytf.build_jacobi(src, 4, 3)
    with pytest.raises(WindowError):
        polytf.build_jacobi(src, -1, 3)


def test_matvec_matches_dense():
    J = polytf.build_jacobi(polytf.legendre(), 2, 12)
    v = np.random.default_rng(0).standard_normal((11, 4))
    np.testing.assert_allclose(J.matvec(v), J.dense() @ v, atol=1e-15)
    np.testing.assert_allclose(J.matvec(v[:, 0]), J.dense() @ v[:, 0], atol=1e-15)


@given(st.sampled_from(["legendre", "chebyshev1", "jacobi"]), st.integers(0, 20), st.integers(0, 60))
@settings(max_examples=40, deadline=None)
def test_decomposition_matches_scipy(family, m, size):
    src = polytf.jacobi(1.5, -0.25) if family == "jacobi" else polytf.from_config({"family": family})
    J = polytf.build_jacobi(src, m, m + size)
    dec = polytf.eigendecompose(J)
    ref = eigh_tridiagonal(J.diagonal, J.offdiagonal, eigvals_only=True)
    np.testing.assert_allclose(dec.eigenvalues, ref, atol=1e-13)
    assert np.all(np.diff(dec.eigenvalues) > 0)
    V = dec.eigenvectors
    np.testing.assert_allclose(V.T @ V, np.eye(J.dim), atol=1e-12)
    # sign rule: first component above 1e-10 is positive
    lead = V[np.argmax(np.abs(V) > 1e-10, axis=0), np.arange(J.dim)]
    assert np.all(lead > 0)


def test_eigenvalues_only():
    J = polytf.build_jacobi(polytf.chebyshev2(), 0, 30)
    np.testing.assert_allclose(polytf.eigenvalues(J), polytf.eigendecompose(J).eigenvalues, atol=1e-15)


def test_nonconvergence_raises(monkeypatch):
    real = _kernels.tql
    monkeypatch.setattr(tridiag._kernels, "tql",
                        lambda d, e, want: real(d, e, want, max_iter=1))
    J = polytf.build_jacobi(polytf.legendre(), 0, 20)
    with pytest.raises(NumericalError) as info:
        polytf.eigendecompose(J)
    assert "dim" in info.value.diagnostics


def test_residual_tolerance_enforced():
    J = polytf.build_jacobi(polytf.legendre(), 0, 20)
    with pytest.raises(NumericalError):
        polytf.eigendecompose(J, tol=0.0)
