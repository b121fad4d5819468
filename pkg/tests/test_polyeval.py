import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import special

import polytf

from conftest import scipy_gauss


def scipy_orthonormal(src, n, x):
    l = np.arange(n + 1)
    if src.family == "chebyshev1":
        scale = np.where(l == 0, 1 / math.sqrt(math.pi), math.sqrt(2 / math.pi))
        return special.eval_chebyt(l, x[:, None]) * scale
    if src.family == "chebyshev2":
        return special.eval_chebyu(l, x[:, None]) * math.sqrt(2 / math.pi)
    if src.family == "legendre":
        return special.eval_legendre(l, x[:, None]) * np.sqrt((2 * l + 1) / 2)
    al, be = src.alpha, src.beta
    s = al + be
    logh = ((s + 1) * math.log(2) - np.log(2 * l + s + 1) + special.gammaln(l + al + 1)
            + special.gammaln(l + be + 1) - special.gammaln(l + s + 1) - special.gammaln(l + 1))
    return special.eval_jacobi(l, al, be, x[:, None]) / np.sqrt(np.exp(logh))


def test_matches_scipy_closed_forms(source):
    x = np.linspace(-1, 1, 301)
    got = polytf.eval_orthonormal(source, 40, x)
    ref = scipy_orthonormal(source, 40, x)
    np.testing.assert_allclose(got, ref, rtol=1e-10, atol=1e-10 * np.abs(ref).max())


def test_orthonormal_under_gauss_rule(source):
    nodes, wts = scipy_gauss(source, 60)
    P = polytf.eval_orthonormal(source, 50, nodes)
    np.testing.assert_allclose(P.T @ (P * wts[:, None]), np.eye(51), atol=1e-11)


def test_shapes():
    src = polytf.legendre()
    assert polytf.eval_orthonormal(src, 5, 0.3).shape == (6,)
    assert polytf.eval_orthonormal(src, 5, np.zeros((2, 3))).shape == (2, 3, 6)


def test_chebyshev1_associated_are_second_kind():
    x = np.linspace(-1, 1, 51)
    for m in (1, 2, 7):
        got = polytf.eval_associated(polytf.chebyshev1(), m, 12, x)
        np.testing.assert_allclose(got, special.eval_chebyu(np.arange(13), x[:, None]), atol=1e-12)


def test_associated_order_zero_is_scaled_orthonormal():
    src = polytf.jacobi(0.5, -0.5)
    x = np.linspace(-1, 1, 11)
    np.testing.assert_allclose(polytf.eval_associated(src, 0, 8, x),
                               src.total_mass ** 0.5 * polytf.eval_orthonormal(src, 8, x))


@pytest.mark.parametrize("m,n", [(0, 5), (2, 7), (4, 9)])
def test_associated_polynomial_is_characteristic_polynomial(source, m, n):
    # p_{n-m+1}(x, m) is proportional to det(x I - J_n^m)
    J = polytf.build_jacobi(source, m, n).dense()
    x = np.linspace(-0.9, 0.9, 7) + 0.013
    p = polytf.eval_associated(source, m, n - m + 1, x)[:, -1]
    det = np.array([np.linalg.det(t * np.eye(J.shape[0]) - J) for t in x])
    ratio = p / det
    np.testing.assert_allclose(ratio, ratio[0], rtol=1e-9)


@given(st.floats(-1, 1), st.floats(-1, 1), st.integers(0, 40))
@settings(max_examples=60, deadline=None)
def test_christoffel_darboux_identity(x, y, n):
    src = polytf.jacobi(0.5, -0.5)
    s = polytf.cd_kernel(src, n, x, y, form="sum")
    r = polytf.cd_kernel(src, n, x, y, form="ratio")
    if abs(x - y) > 1e-3:
        assert r == pytest.approx(s, rel=1e-8, abs=1e-8 * (n + 1))
    assert polytf.cd_kernel(src, n, x, x) > 0


@given(st.floats(-1, 1))
@settings(max_examples=30, deadline=None)
def test_parity_of_symmetric_weights(x):
    for src in (polytf.legendre(), polytf.chebyshev2()):
        p = polytf.eval_orthonormal(src, 15, x)
        q = polytf.eval_orthonormal(src, 15, -x)
        np.testing.assert_allclose(q, p * (-1.0) ** np.arange(16), atol=1e-12)


def test_eval_series():
    src = polytf.legendre()
    x = np.linspace(-1, 1, 9)
    c = np.array([0.5, -1.0, 2.0])
    ref = polytf.eval_orthonormal(src, 5, x)[:, 3:] @ c
    np.testing.assert_allclose(polytf.eval_series(src, 3, c, x), ref)
