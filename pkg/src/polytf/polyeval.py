"""Orthonormal and associated polynomials by forward recurrence."""

import numpy as np

from . import _kernels
from .errors import WindowError


def _values(source, count, x):
    x = np.asarray(x, dtype=np.float64)
    a, b = source.arrays(count + 1)
    flat = _kernels.recurrence_values(a[:count], b, 1.0 / b[0], x.ravel())
    return flat.reshape(x.shape + (count + 1,))


def eval_orthonormal(source, n, x):
    """Values ``p_0(x), ..., p_n(x)`` of the orthonormal polynomials.

    Parameters
    ----------
    source : RecurrenceSource
    n : int
        Highest degree, ``n >= 0``.
    x : float or array_like
        Abscissae. Points outside [-1, 1] are allowed.

    Returns
    -------
    ndarray
        Shape ``np.shape(x) + (n + 1,)``; the last axis runs over degree.
    """
    if n < 0:
        raise WindowError(f"degree n must be >= 0, got {n}")
    return _values(source, n, x)


def eval_associated(source, m, count, x):
    """Values ``p_0(x, m), ..., p_count(x, m)`` of the associated polynomials.

    ``p_0(x, m) = 1``. For ``m = 0`` the result is ``b_0 * p_l(x)``.
    """
    if m < 0:
        raise WindowError(f"associated order m must be >= 0, got {m}")
    if count < 0:
        raise WindowError(f"count must be >= 0, got {count}")
    if m == 0:
        return source.coefficients(0)[1] * _values(source, count, x)
    return _values(source.associated(m), count, x)


def eval_series(source, m0, coeffs, x):
    """Evaluate ``sum_l coeffs[l - m0] p_l(x)`` for ``l = m0 .. m0 + len(coeffs) - 1``."""
    coeffs = np.asarray(coeffs, dtype=np.float64)
    top = m0 + coeffs.shape[0] - 1
    values = eval_orthonormal(source, top, x)
    return values[..., m0:] @ coeffs


def cd_kernel(source, n, x, y, form="sum"):
    """Christoffel-Darboux kernel ``K_n(x, y) = sum_{l<=n} p_l(x) p_l(y)``.

    ``form="ratio"`` uses ``b_{n+1} (p_{n+1}(x) p_n(y) - p_n(x) p_{n+1}(y)) / (x - y)``
    and falls back to the sum on the diagonal ``x == y``.
    """
    if n < 0:
        raise WindowError(f"degree n must be >= 0, got {n}")
    if form not in ("sum", "ratio"):
        raise ValueError(f"form must be 'sum' or 'ratio', got {form!r}")
    px = eval_orthonormal(source, n + 1, x)
    py = eval_orthonormal(source, n + 1, y)
    total = np.sum(px[..., : n + 1] * py[..., : n + 1], axis=-1)
    if form == "sum":
        return total if np.ndim(total) else float(total)
    b_next = source.coefficients(n + 1)[1]
    diff = np.asarray(x, dtype=np.float64) - np.asarray(y, dtype=np.float64)
    num = b_next * (px[..., n + 1] * py[..., n] - px[..., n] * py[..., n + 1])
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(diff != 0.0, num / np.where(diff != 0.0, diff, 1.0), total)
    return ratio if np.ndim(ratio) else float(ratio)
