"""Jacobi matrices of a degree window and their eigendecomposition."""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import NumericalError, WindowError

DEFAULT_TOL = 1e-12


@dataclass(frozen=True)
class JacobiMatrix:
    """Symmetric tridiagonal matrix ``J_n^m``.

    ``diagonal`` holds ``a_m..a_n`` and ``offdiagonal`` holds ``b_{m+1}..b_n``.
    """

    m: int
    n: int
    diagonal: np.ndarray
    offdiagonal: np.ndarray

    @property
    def dim(self):
        return self.n - self.m + 1

    def dense(self):
        return (np.diag(self.diagonal) + np.diag(self.offdiagonal, 1)
                + np.diag(self.offdiagonal, -1))

    def matvec(self, v):
        """``J @ v`` for a vector or a matrix of column vectors."""
        v = np.asarray(v, dtype=np.float64)
        d = self.diagonal.reshape((-1,) + (1,) * (v.ndim - 1))
        e = self.offdiagonal.reshape((-1,) + (1,) * (v.ndim - 1))
        out = d * v
        out[:-1] += e * v[1:]
        out[1:] += e * v[:-1]
        return out

    def norm(self):
        """Infinity norm (max absolute row sum), an upper bound for the 2-norm."""
        rows = np.abs(self.diagonal).copy()
        rows[:-1] += np.abs(self.offdiagonal)
        rows[1:] += np.abs(self.offdiagonal)
        return float(rows.max())


@dataclass(frozen=True)
class EigenDecomposition:
    """Ascending eigenvalues with matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    iterations: int = 0


def build_jacobi(source, m, n):
    """Jacobi matrix of the window ``m..n`` of ``source``."""
    if m < 0 or n < m:
        raise WindowError(f"need 0 <= m <= n, got m={m}, n={n}")
    a, b = source.arrays(n + 1)
    diag = a[m:n + 1].copy()
    off = b[m + 1:n + 1].copy()
    diag.setflags(write=False)
    off.setflags(write=False)
    return JacobiMatrix(m, n, diag, off)


def _run(J, want_vectors):
    w, z, iterations, converged = _kernels.tql(J.diagonal, J.offdiagonal, want_vectors)
    if not converged:
        raise NumericalError("implicit QL iteration did not converge",
                             dim=J.dim, iterations=iterations, cap=50 * J.dim)
    order = np.argsort(w, kind="stable")
    return w[order], (z[:, order] if want_vectors else None), iterations


def eigenvalues(J):
    """Ascending eigenvalues of ``J`` without eigenvectors."""
    w, _, _ = _run(J, False)
    return w


def eigendecompose(J, tol=DEFAULT_TOL):
    """Full spectral decomposition of a Jacobi matrix.

    Parameters
    ----------
    J : JacobiMatrix
    tol : float
        Relative residual accepted per eigenpair, ``||J v - x v|| <= tol * ||J||``.

    Returns
    -------
    EigenDecomposition
        Eigenvalues ascending (k = 1 smallest). Each eigenvector column is
        scaled so that its first component above 1e-10 in magnitude is positive.

    Raises
    ------
    NumericalError
        If the iteration cap ``50 * dim`` is exceeded or a residual fails.
    """
    w, z, iterations = _run(J, True)
    lead = np.argmax(np.abs(z) > 1e-10, axis=0)
    signs = np.sign(z[lead, np.arange(z.shape[1])])
    signs[signs == 0] = 1.0
    z *= signs
    residual = np.linalg.norm(J.matvec(z) - z * w, axis=0)
    scale = max(J.norm(), np.finfo(float).tiny)
    worst = float(residual.max()) / scale
    if worst > tol:
        raise NumericalError("eigenpair residual exceeds tolerance",
                             dim=J.dim, relative_residual=worst, tol=tol)
    w.setflags(write=False)
    z.setflags(write=False)
    return EigenDecomposition(w, z, iterations)
