"""Hot numeric loops: three-term recurrences and the implicit QL eigensolver.

Each kernel exists twice, a Numba ``@njit`` version and a pure-numpy one with
the same signature. The active pair is chosen once at import time: setting
``POLYTF_DISABLE_NUMBA=1`` (or running without numba installed) selects the
numpy path. Both variants stay importable so they can be compared directly.
"""

import math
import os

import numpy as np

_DISABLED = os.environ.get("POLYTF_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAS_NUMBA = False

EPS = np.finfo(np.float64).eps


# --------------------------------------------------------------------------
# three-term recurrence
# --------------------------------------------------------------------------

def _recurrence_numpy(a, b, p0, x):
    """Values p_0..p_count of ``b[j+1] p_{j+1} = (x - a[j]) p_j - b[j] p_{j-1}``.

    ``a`` has length ``count`` and ``b`` length ``count + 1``; ``x`` is 1-D.
    Returns an array of shape ``(x.size, count + 1)``.
    """
    count = a.shape[0]
    out = np.empty((x.shape[0], count + 1))
    out[:, 0] = p0
    if count == 0:
        return out
    out[:, 1] = (x - a[0]) * p0 / b[1]
    for j in range(1, count):
        out[:, j + 1] = ((x - a[j]) * out[:, j] - b[j] * out[:, j - 1]) / b[j + 1]
    return out


def _recurrence_loops(a, b, p0, x):
    count = a.shape[0]
    npts = x.shape[0]
    out = np.empty((npts, count + 1))
    for i in range(npts):
        xi = x[i]
        prev = 0.0
        cur = p0
        out[i, 0] = cur
        for j in range(count):
            nxt = ((xi - a[j]) * cur - b[j] * prev) / b[j + 1]
            out[i, j + 1] = nxt
            prev = cur
            cur = nxt
    return out


# --------------------------------------------------------------------------
# symmetric tridiagonal eigensolver (implicit-shift QL)
# --------------------------------------------------------------------------

def _tql_loops(d, e, z, want_vectors, max_iter):
    # d: diagonal (overwritten with eigenvalues), e: off-diagonal padded with a
    # trailing zero so that e[i] couples rows i and i+1. z: identity on entry.
    n = d.shape[0]
    total = 0
    for l in range(n):
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= EPS * dd:
                    break
                m += 1
            if m == l:
                break
            total += 1
            if total > max_iter:
                return total, False
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = 1.0
            c = 1.0
            p = 0.0
            i = m - 1
            underflow = False
            while i >= l:
                f = s * e[i]
                bb = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * bb
                p = s * r
                d[i + 1] = g + p
                g = c * r - bb
                if want_vectors:
                    for k in range(n):
                        f = z[k, i + 1]
                        z[k, i + 1] = s * z[k, i] + c * f
                        z[k, i] = c * z[k, i] - s * f
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return total, True


def _tql_numpy(d, e, z, want_vectors, max_iter):
    # Same iteration as _tql_loops; eigenvector rotations act on whole rows of
    # the transposed (contiguous) eigenvector matrix.
    n = d.shape[0]
    total = 0
    zt = np.ascontiguousarray(z.T) if want_vectors else z
    for l in range(n):
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= EPS * dd:
                    break
                m += 1
            if m == l:
                break
            total += 1
            if total > max_iter:
                if want_vectors:
                    z[:] = zt.T
                return total, False
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = m - 1
            underflow = False
            while i >= l:
                f = s * e[i]
                bb = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * bb
                p = s * r
                d[i + 1] = g + p
                g = c * r - bb
                if want_vectors:
                    zi = zt[i]
                    zi1 = zt[i + 1]
                    tmp = c * zi - s * zi1
                    zi1 *= c
                    zi1 += s * zi
                    zt[i] = tmp
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    if want_vectors:
        z[:] = zt.T
    return total, True


KERNELS = {
    "numpy": {"recurrence": _recurrence_numpy, "tql": _tql_numpy},
}

if HAS_NUMBA:
    KERNELS["numba"] = {
        "recurrence": njit(cache=True)(_recurrence_loops),
        "tql": njit(cache=True)(_tql_loops),
    }

BACKEND = "numba" if HAS_NUMBA and not _DISABLED else "numpy"


def _kernel(backend, name):
    key = backend or BACKEND
    if key not in KERNELS:
        raise ValueError(f"backend must be one of {sorted(KERNELS)}, got {key!r}")
    return KERNELS[key][name]


def recurrence_values(a, b, p0, x, backend=None):
    """Evaluate a three-term recurrence at every point of ``x``.

    Parameters
    ----------
    a : ndarray, shape (count,)
        Diagonal coefficients a_0..a_{count-1}.
    b : ndarray, shape (count + 1,)
        Off-diagonal coefficients b_0..b_count; ``b[0]`` multiplies the
        vanishing p_{-1} and is never used.
    p0 : float
        Starting value p_0.
    x : ndarray, shape (npts,)
    backend : {"numba", "numpy"}, optional
        Override the import-time choice.

    Returns
    -------
    ndarray, shape (npts, count + 1)
    """
    fn = _kernel(backend, "recurrence")
    return fn(np.ascontiguousarray(a, dtype=np.float64),
              np.ascontiguousarray(b, dtype=np.float64),
              float(p0),
              np.ascontiguousarray(x, dtype=np.float64))


def tql(diagonal, offdiagonal, want_vectors=True, max_iter=None, backend=None):
    """Implicit-shift QL iteration on a symmetric tridiagonal matrix.

    Returns ``(eigenvalues, vectors, iterations, converged)``; eigenvalues are
    unsorted and ``vectors`` is ``None`` when not requested.
    """
    d = np.array(diagonal, dtype=np.float64)
    n = d.shape[0]
    e = np.zeros(n)
    e[: n - 1] = offdiagonal
    z = np.eye(n) if want_vectors else np.zeros((1, 1))
    if max_iter is None:
        max_iter = 50 * n
    fn = _kernel(backend, "tql")
    iterations, converged = fn(d, e, z, bool(want_vectors), int(max_iter))
    return d, (z if want_vectors else None), int(iterations), bool(converged)
