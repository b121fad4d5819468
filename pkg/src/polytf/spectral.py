"""Eigenpairs of the compressed multiplication operator on a polynomial window.

For the window ``Pi_n^m = span{p_m, ..., p_n}`` the operator ``P M_x P`` acts
as the Jacobi matrix ``J_n^m`` on coefficient vectors. Its eigenfunctions
``psi_{n,k}^m`` are stored as coefficient columns in the basis ``p_m..p_n``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import NumericalError, WindowError
from .polyeval import eval_associated, eval_orthonormal
from .tridiag import build_jacobi, eigendecompose

KAPPA_RTOL = 1e-8


@dataclass(frozen=True, eq=False)
class SlepianBasis:
    """Orthonormal eigenbasis of a degree window.

    Attributes
    ----------
    source : RecurrenceSource
    m, n : int
        Window ``m..n``.
    eigenvalues : ndarray, shape (dim,)
        ``x_{n,k}^m`` ascending; index ``k - 1`` holds the k-th eigenvalue.
    coefficients : ndarray, shape (dim, dim)
        Column ``k - 1`` expands ``psi_{n,k}^m`` in ``p_m..p_n``.
    kappa : ndarray, shape (dim,)
        Normalising constants. For ``m >= 1`` these are
        ``(sum_j p_j(x_k, m)^2)^{-1/2}``, for ``m = 0``
        ``(sum_l p_l(x_k)^2)^{-1/2}`` with orthonormal ``p_l``.
    """

    source: object
    m: int
    n: int
    eigenvalues: np.ndarray
    coefficients: np.ndarray
    kappa: np.ndarray

    @property
    def dim(self):
        return self.n - self.m + 1

    @property
    def x_min(self):
        return float(self.eigenvalues[0])

    @property
    def x_max(self):
        return float(self.eigenvalues[-1])

    def check_k(self, k):
        if not 1 <= k <= self.dim:
            raise WindowError(f"k must lie in 1..{self.dim}, got {k}")

    def column(self, k):
        self.check_k(k)
        return self.coefficients[:, k - 1]

    def function(self, k):
        """``psi_{n,k}^m`` as a :class:`~polytf.localization.FunctionRep`."""
        from .localization import FunctionRep

        return FunctionRep(self.source, self.m, self.column(k))


def recurrence_vectors(source, m, n, nodes):
    """Unnormalised eigenvector candidates built by the recurrence at ``nodes``.

    Row ``i`` is ``(p_0(x_i, m), ..., p_{n-m}(x_i, m))`` for ``m >= 1`` and
    ``(p_0(x_i), ..., p_n(x_i))`` for ``m = 0``.
    """
    if m == 0:
        return eval_orthonormal(source, n, nodes)
    return eval_associated(source, m, n - m, nodes)


def slepian_basis(source, m, n):
    """Spectral decomposition of ``P_n^m M_x P_n^m``.

    The eigenvectors come from the tridiagonal solver; ``kappa`` comes from
    the recurrence vectors and is checked against the first solver component.

    Raises
    ------
    WindowError
        Unless ``0 <= m <= n``.
    NumericalError
        If the solver fails or ``kappa`` disagrees with the solver vectors.
    """
    J = build_jacobi(source, m, n)
    dec = eigendecompose(J)
    x = dec.eigenvalues
    q = recurrence_vectors(source, m, n, x)
    kappa = 1.0 / np.sqrt(np.sum(q * q, axis=1))
    # first component predicted by the recurrence vector: kappa * q_0
    predicted = kappa * q[:, 0]
    first = np.abs(dec.eigenvectors[0, :])
    mismatch = np.abs(first - predicted) / predicted
    if np.any(mismatch > KAPPA_RTOL):
        raise NumericalError("normalising constants disagree with solver eigenvectors",
                             m=m, n=n, worst_relative_mismatch=float(mismatch.max()))
    kappa.setflags(write=False)
    return SlepianBasis(source, m, n, x, dec.eigenvectors, kappa)


def eval_psi_series(basis, k, x):
    """``psi_{n,k}^m(x)`` from its expansion in ``p_m..p_n``."""
    col = basis.column(k)
    values = eval_orthonormal(basis.source, basis.n, x)
    out = values[..., basis.m:] @ col
    return out if np.ndim(out) else float(out)


def singular_radius(xk):
    """Half-width around an eigenvalue inside which the explicit form is not used."""
    return 1e-6 * (1.0 + abs(xk))


def eval_psi_explicit(basis, k, x):
    """``psi_{n,k}^m(x)`` from the closed Christoffel-Darboux type formula.

    ``kappa (b_{n+1} p_{n+1}(x) p_{n-m}(x_k, m) + b_m p_{m-1}(x)) / (x - x_k)``
    for ``m >= 1`` and ``kappa b_{n+1} p_n(x_k) p_{n+1}(x) / (x - x_k)`` for
    ``m = 0``. Within :func:`singular_radius` of ``x_k`` the series form is
    returned instead.
    """
    basis.check_k(k)
    source, m, n = basis.source, basis.m, basis.n
    xk = float(basis.eigenvalues[k - 1])
    kap = float(basis.kappa[k - 1])
    x = np.asarray(x, dtype=np.float64)
    _, b = source.arrays(n + 2)
    p = eval_orthonormal(source, n + 1, x)
    q_last = recurrence_vectors(source, m, n, np.array([xk]))[0, -1]
    num = b[n + 1] * p[..., n + 1] * q_last
    if m >= 1:
        num = num + b[m] * p[..., m - 1]
    diff = x - xk
    near = np.abs(diff) < singular_radius(xk)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = kap * num / np.where(near, 1.0, diff)
    if np.any(near):
        series = np.asarray(eval_psi_series(basis, k, x))
        out = np.where(near, series, out)
    return out if np.ndim(out) else float(out)
