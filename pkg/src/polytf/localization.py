"""Mean value, variance and window mass of functions given by coefficients.

Everything is computed from tridiagonal quadratic forms in coefficient
space, so no quadrature enters.
"""

from dataclasses import dataclass

import numpy as np

from ._parallel import thread_map
from .errors import DomainError, NormalizationError, WindowError
from .polyeval import eval_series
from .spectral import recurrence_vectors
from .tridiag import build_jacobi, eigenvalues

NORM_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class FunctionRep:
    """``f = sum_{l=m0}^{D} c_l p_l`` for a given recurrence source."""

    source: object
    m0: int
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.float64).ravel()
        if c.size == 0:
            raise DomainError("a function needs at least one coefficient")
        if self.m0 < 0:
            raise WindowError(f"base index m0 must be >= 0, got {self.m0}")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self):
        """Highest index ``D`` carried by the coefficient array."""
        return self.m0 + self.coeffs.shape[0] - 1

    @property
    def norm(self):
        return float(np.sqrt(np.dot(self.coeffs, self.coeffs)))

    def normalized(self):
        nrm = self.norm
        if nrm == 0.0:
            raise DomainError("cannot normalise the zero function")
        return FunctionRep(self.source, self.m0, self.coeffs / nrm)

    def coefficient_array(self, lo, hi):
        """Coefficients for indices ``lo..hi``, zero-padded outside ``m0..D``."""
        out = np.zeros(hi - lo + 1)
        s = max(lo, self.m0)
        e = min(hi, self.degree)
        if s <= e:
            out[s - lo:e - lo + 1] = self.coeffs[s - self.m0:e - self.m0 + 1]
        return out

    def __call__(self, x):
        out = eval_series(self.source, self.m0, self.coeffs, x)
        return out if np.ndim(out) else float(out)


@dataclass(frozen=True)
class LocalizationReport:
    epsilon: float
    variance: float
    window_mass: float


def _require_normalized(f):
    nrm = f.norm
    if nrm == 0.0:
        raise DomainError("mean value and variance are undefined for the zero function")
    if abs(nrm - 1.0) > NORM_TOL:
        raise NormalizationError(f"function must have unit norm, got {nrm!r}")


def _epsilon_raw(J, c):
    return float(c @ J.matvec(c))


def epsilon(f):
    """Mean value ``eps(f) = int x |f|^2 w = c^T J c`` of a normalised ``f``."""
    _require_normalized(f)
    J = build_jacobi(f.source, f.m0, f.degree)
    return _epsilon_raw(J, f.coeffs)


def _variance_raw(f, J):
    c = f.coeffs
    jc = J.matvec(c)
    eps = float(c @ jc)
    _, b = f.source.arrays(f.degree + 2)
    second = float(jc @ jc) + b[f.degree + 1] ** 2 * c[-1] ** 2
    if f.m0 >= 1:
        second += b[f.m0] ** 2 * c[0] ** 2
    return second - eps * eps, eps


def variance(f):
    """Variance ``int (x - eps)^2 |f|^2 w`` of a normalised ``f``.

    Uses ``|J c|^2 + b_{m0}^2 c_{m0}^2 [m0 >= 1] + b_{D+1}^2 c_D^2 - (c^T J c)^2``,
    the boundary terms accounting for the parts of ``x f`` that leave the
    window ``m0..D``.
    """
    _require_normalized(f)
    J = build_jacobi(f.source, f.m0, f.degree)
    var, _ = _variance_raw(f, J)
    return max(var, 0.0)


def window_mass(f, m, n):
    """``pi_n^m(f) = sum_{l=m}^n c_l^2`` of a normalised ``f``."""
    if m < 0 or n < m:
        raise WindowError(f"need 0 <= m <= n, got m={m}, n={n}")
    _require_normalized(f)
    c = f.coefficient_array(m, n)
    return float(c @ c)


def localization_report(f, m, n):
    _require_normalized(f)
    J = build_jacobi(f.source, f.m0, f.degree)
    var, eps = _variance_raw(f, J)
    return LocalizationReport(eps, max(var, 0.0), window_mass(f, m, n))


def _closed_variances(source, m, n, nodes):
    q = recurrence_vectors(source, m, n, nodes)
    _, b = source.arrays(n + 2)
    num = b[n + 1] ** 2 * q[:, -1] ** 2
    if m >= 1:
        num = num + b[m] ** 2
    return num / np.sum(q * q, axis=1)


def psi_variance_closed(basis, k):
    """Variance of ``psi_{n,k}^m`` from the recurrence values at ``x_k``.

    ``(b_{n+1}^2 p_{n-m}(x_k, m)^2 + b_m^2) / sum_j p_j(x_k, m)^2`` for
    ``m >= 1``; for ``m = 0`` the ``b_m`` term is absent and orthonormal
    ``p_l`` are used.
    """
    basis.check_k(k)
    xk = basis.eigenvalues[k - 1:k]
    return float(_closed_variances(basis.source, basis.m, basis.n, xk)[0])


K_SELECTORS = ("all", "max", "min", "mid", "argmax")


@dataclass(frozen=True)
class SweepRow:
    n: int
    k: int
    x: float
    var: float


def _select(selector, nodes, var):
    dim = nodes.shape[0]
    if selector == "all":
        return range(1, dim + 1)
    if selector == "max":
        return [dim]
    if selector == "min":
        return [1]
    if selector == "mid":
        return [(dim + 1) // 2]
    if selector == "argmax":
        return [int(np.argmax(var)) + 1]
    raise ValueError(f"k selector must be one of {K_SELECTORS}, got {selector!r}")


def variance_decay_sweep(source, m, n_list, k_selector="all"):
    """Eigenfunction variances along a list of window ends ``n``.

    Parameters
    ----------
    source : RecurrenceSource
    m : int
        Window start, shared by every ``n``.
    n_list : sequence of int
        Ascending window ends, each ``>= m``.
    k_selector : {"all", "max", "min", "mid", "argmax"} or callable
        Which eigenfunctions to report per ``n``. A callable receives
        ``(nodes, variances)`` and returns 1-based indices.

    Returns
    -------
    list of SweepRow
    """
    n_list = [int(v) for v in n_list]
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ValueError("n_list must be strictly ascending")
    if n_list and n_list[0] < m:
        raise WindowError(f"every n must be >= m={m}")

    def one(n):
        nodes = eigenvalues(build_jacobi(source, m, n))
        var = _closed_variances(source, m, n, nodes)
        ks = k_selector(nodes, var) if callable(k_selector) else _select(k_selector, nodes, var)
        return [SweepRow(n, k, float(nodes[k - 1]), float(var[k - 1])) for k in ks]

    rows = []
    for chunk in thread_map(one, n_list):
        rows.extend(chunk)
    return rows
