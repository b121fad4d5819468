"""Joint constraints on the mean value eps(f) and the window mass pi_n^m(f).

The rectangle ``(-1, 1) x [0, 1]`` of pairs ``(eps, pi)`` splits into an
attainable part ``A``, two undetermined strips ``B1``/``B2`` and two
forbidden corners ``C1``/``C2``, all defined through the extreme eigenvalues
``x_min``, ``x_max`` of the window's Jacobi matrix.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericalError
from .localization import FunctionRep, _variance_raw, epsilon, window_mass
from .spectral import slepian_basis
from .tridiag import build_jacobi, eigenvalues

TOL = 1e-12
WITNESS_TOL = 1e-9
LABELS = ("A", "B1", "B2", "C1", "C2", "boundary")
MAX_OUTER_SPAN = 2000


def gamma1(x, x_max):
    """``1/2 + (x x_max + sqrt(1 - x^2) sqrt(1 - x_max^2)) / 2`` on ``[x_max, 1]``."""
    x = np.asarray(x, dtype=np.float64)
    if np.any(x < x_max - TOL) or np.any(x > 1.0):
        raise DomainError(f"gamma1 is defined on [{x_max}, 1]")
    xc = np.clip(x, -1.0, 1.0)
    out = 0.5 + 0.5 * (xc * x_max + np.sqrt(1.0 - xc * xc) * math.sqrt(1.0 - x_max * x_max))
    return out if out.ndim else float(out)


def gamma2(x, x_min):
    """``1/2 + (x x_min + sqrt(1 - x^2) sqrt(1 - x_min^2)) / 2`` on ``[-1, x_min]``."""
    x = np.asarray(x, dtype=np.float64)
    if np.any(x > x_min + TOL) or np.any(x < -1.0):
        raise DomainError(f"gamma2 is defined on [-1, {x_min}]")
    xc = np.clip(x, -1.0, 1.0)
    out = 0.5 + 0.5 * (xc * x_min + np.sqrt(1.0 - xc * xc) * math.sqrt(1.0 - x_min * x_min))
    return out if out.ndim else float(out)


def sharp_bound(eps, var, edge, side="upper"):
    """Variance-dependent upper bound for ``pi_n^m(f)``.

    For ``side="upper"`` (``eps >= x_max``, ``edge = x_max``) returns the
    square of

        ((eps+1)^{3/2} (edge+1)^{1/2} + sqrt(var) sqrt(var + (1+eps)(eps-edge)))
        / (var + (eps+1)^2).

    ``side="lower"`` (``eps <= x_min``, ``edge = x_min``) is the mirror image
    under ``x -> -x``.
    """
    eps = np.asarray(eps, dtype=np.float64)
    var = np.maximum(np.asarray(var, dtype=np.float64), 0.0)
    if side == "lower":
        eps, edge = -eps, -edge
    elif side != "upper":
        raise ValueError(f"side must be 'upper' or 'lower', got {side!r}")
    u = eps + 1.0
    denom = var + u * u
    inner = np.maximum(var + u * (eps - edge), 0.0)
    root = (u ** 1.5 * math.sqrt(edge + 1.0) + np.sqrt(var) * np.sqrt(inner)) / denom
    out = root * root
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class UncertaintyRegion:
    """Region geometry of the window ``(m, n)``."""

    m: int
    n: int
    x_min: float
    x_max: float

    def gamma1(self, x):
        return gamma1(x, self.x_max)

    def gamma2(self, x):
        return gamma2(x, self.x_min)

    def upper_line(self, x):
        """``(1 - x) / (1 - x_max)``, the A/B1 border."""
        return (1.0 - np.asarray(x)) / (1.0 - self.x_max)

    def lower_line(self, x):
        """``(1 + x) / (1 + x_min)``, the A/B2 border."""
        return (1.0 + np.asarray(x)) / (1.0 + self.x_min)

    def classify_many(self, eps, pi):
        """Vectorised :meth:`classify`; returns an array of labels."""
        eps = np.asarray(eps, dtype=np.float64)
        pi = np.asarray(pi, dtype=np.float64)
        if np.any(np.abs(eps) >= 1.0):
            raise DomainError("eps must lie in (-1, 1)")
        if np.any(pi < -TOL) or np.any(pi > 1.0 + TOL):
            raise DomainError("pi must lie in [0, 1]")
        eps, pi = np.broadcast_arrays(eps, pi)
        labels = np.full(eps.shape, "A", dtype=object)

        right = eps > self.x_max + TOL
        if np.any(right):
            e, p = eps[right], pi[right]
            g = gamma1(e, self.x_max)
            line = self.upper_line(e)
            labels[right] = _side_labels(p, line, g, "B1", "C1")

        left = eps < self.x_min - TOL
        if np.any(left):
            e, p = eps[left], pi[left]
            g = gamma2(e, self.x_min)
            line = self.lower_line(e)
            labels[left] = _side_labels(p, line, g, "B2", "C2")
        return labels

    def classify(self, eps, pi):
        """Label of the pair ``(eps, pi)``: one of ``A, B1, B2, C1, C2, boundary``.

        Inequalities are evaluated with tolerance 1e-12. Points within that
        distance of the A/B border or the B/C curve are labelled
        ``"boundary"``; the two corner points ``(x_max, 1)`` and
        ``(x_min, 1)`` belong to ``A``.
        """
        return str(self.classify_many(np.array([eps]), np.array([pi]))[0])


def _side_labels(p, line, g, b_label, c_label):
    out = np.full(p.shape, "A", dtype=object)
    out[p >= line - TOL] = "boundary"
    out[p > line + TOL] = b_label
    out[np.abs(p - g) <= TOL] = "boundary"
    out[p > g + TOL] = c_label
    return out


def uncertainty_region(source, m, n):
    """Region geometry from the extreme eigenvalues of ``J_n^m``."""
    nodes = eigenvalues(build_jacobi(source, m, n))
    return UncertaintyRegion(m, n, float(nodes[0]), float(nodes[-1]))


def region_from_basis(basis):
    return UncertaintyRegion(basis.m, basis.n, basis.x_min, basis.x_max)


@dataclass(frozen=True)
class BoundsReport:
    epsilon: float
    variance: float
    window_mass: float
    side: str
    sharp_bound: float
    gamma_bound: float

    @property
    def applicable(self):
        return self.side is not None

    @property
    def satisfied(self):
        if self.side is None:
            return True
        return (self.window_mass <= self.sharp_bound + TOL
                and self.window_mass <= self.gamma_bound + TOL)


def check_bounds(f, region):
    """Evaluate both upper bounds on ``pi_n^m(f)`` for a normalised ``f``.

    When ``x_min < eps(f) < x_max`` the bounds are vacuous and the report has
    ``side=None``; otherwise ``side`` is ``"upper"`` or ``"lower"`` and
    :attr:`BoundsReport.satisfied` tells whether ``pi`` respects both.
    """
    eps = epsilon(f)
    var, _ = _variance_raw(f, build_jacobi(f.source, f.m0, f.degree))
    var = max(var, 0.0)
    pi = window_mass(f, region.m, region.n)
    if eps >= region.x_max:
        return BoundsReport(eps, var, pi, "upper",
                            sharp_bound(eps, var, region.x_max, "upper"),
                            gamma1(eps, region.x_max))
    if eps <= region.x_min:
        return BoundsReport(eps, var, pi, "lower",
                            sharp_bound(eps, var, region.x_min, "lower"),
                            gamma2(eps, region.x_min))
    return BoundsReport(eps, var, pi, None, None, None)


@dataclass(frozen=True)
class WitnessFunction:
    """A normalised function built to reach a prescribed ``(eps, pi)``.

    ``construction`` is ``"diagonal"`` (extreme eigenfunctions of one window,
    ``pi = 1``), ``"edge-mix"`` (top eigenfunctions of two separated windows)
    or ``"mixed"`` (diagonal witnesses of two separated windows at chosen
    mean values).
    """

    function: FunctionRep
    target: tuple
    achieved: tuple
    construction: str
    outer_window: tuple = None

    def as_dict(self):
        return {
            "construction": self.construction,
            "target": {"eps": self.target[0], "pi": self.target[1]},
            "achieved": {"eps": self.achieved[0], "pi": self.achieved[1]},
            "outer_window": list(self.outer_window) if self.outer_window else None,
            "m0": self.function.m0,
            "coeffs": self.function.coeffs.tolist(),
        }


def _diagonal_coefficients(basis, alpha):
    lo, hi = basis.x_min, basis.x_max
    if alpha < lo - TOL or alpha > hi + TOL:
        raise DomainError(f"alpha must lie in [{lo}, {hi}], got {alpha}")
    if basis.dim == 1:
        return basis.coefficients[:, 0].copy()
    t = min(max((alpha - lo) / (hi - lo), 0.0), 1.0)
    return math.sqrt(t) * basis.coefficients[:, -1] + math.sqrt(1.0 - t) * basis.coefficients[:, 0]


def _verified(f, window, target, construction, outer=None):
    achieved = (epsilon(f), window_mass(f, *window))
    if abs(achieved[0] - target[0]) > WITNESS_TOL or abs(achieved[1] - target[1]) > WITNESS_TOL:
        raise NumericalError("witness missed its analytic prediction",
                             target=target, achieved=achieved)
    return WitnessFunction(f, target, achieved, construction, outer)


def witness_diagonal(basis, alpha):
    """Unit-mass witness with mean value ``alpha``.

    Mixes the extreme eigenfunctions with weights
    ``sqrt((alpha - x_min)/(x_max - x_min))`` and
    ``sqrt((x_max - alpha)/(x_max - x_min))``, so ``pi = 1`` and ``eps = alpha``.
    """
    c = _diagonal_coefficients(basis, alpha)
    f = FunctionRep(basis.source, basis.m, c)
    return _verified(f, (basis.m, basis.n), (float(alpha), 1.0), "diagonal")


def witness_mixed(inner, outer, lam, inner_alpha=None, outer_alpha=None):
    """``sqrt(lam) f_in + sqrt(1 - lam) f_out`` across two separated windows.

    ``f_in`` is the diagonal witness of ``inner`` at ``inner_alpha`` and
    ``f_out`` that of ``outer`` at ``outer_alpha``; both default to the
    eigenfunction of the largest eigenvalue. ``outer`` must start at least two
    degrees above the end of ``inner`` so that ``f_out`` is orthogonal to both
    ``f_in`` and ``x f_in``. Then ``pi = lam`` and
    ``eps = lam * inner_alpha + (1 - lam) * outer_alpha``.
    """
    if not inner.source.same_weight(outer.source):
        raise DomainError("inner and outer windows use different weights")
    if outer.m < inner.n + 2:
        raise DomainError(f"outer window must start at >= {inner.n + 2}, got {outer.m}")
    if not 0.0 <= lam <= 1.0:
        raise DomainError(f"lambda must lie in [0, 1], got {lam}")
    a_in = inner.x_max if inner_alpha is None else float(inner_alpha)
    a_out = outer.x_max if outer_alpha is None else float(outer_alpha)
    c = np.zeros(outer.n - inner.m + 1)
    c[: inner.dim] = math.sqrt(lam) * _diagonal_coefficients(inner, a_in)
    c[outer.m - inner.m:] = math.sqrt(1.0 - lam) * _diagonal_coefficients(outer, a_out)
    f = FunctionRep(inner.source, inner.m, c)
    target = (lam * a_in + (1.0 - lam) * a_out, float(lam))
    tag = "edge-mix" if inner_alpha is None and outer_alpha is None else "mixed"
    return _verified(f, (inner.m, inner.n), target, tag, (outer.m, outer.n))


def witness_target(source, m, n, eps_target, pi_target, inner=None):
    """Construct a function whose ``(eps, pi)`` equals a target point of ``A``.

    The inner part sits at ``clip(eps_target, x_min, x_max)`` with weight
    ``pi_target``; the outer part is a diagonal witness of a window starting at
    ``n + 2`` whose size is doubled until its spectrum covers the remaining
    mean value.

    Raises
    ------
    DomainError
        If the target is not in region ``A``.
    NumericalError
        If no outer window ending within ``n + 2 + 2000`` covers the target.
    """
    basis = inner if inner is not None else slepian_basis(source, m, n)
    region = region_from_basis(basis)
    label = region.classify(eps_target, pi_target)
    if label != "A":
        raise DomainError(f"target ({eps_target}, {pi_target}) lies in {label}, not A")
    alpha = min(max(eps_target, basis.x_min), basis.x_max)
    if pi_target >= 1.0 - TOL:
        return witness_diagonal(basis, alpha)
    beta = (eps_target - pi_target * alpha) / (1.0 - pi_target)
    start = n + 2
    size = 8
    while True:
        end = start + size - 1
        if end > start + MAX_OUTER_SPAN:
            raise NumericalError("no outer window covers the required mean value",
                                 required=beta, largest_window=(start, start + MAX_OUTER_SPAN))
        nodes = eigenvalues(build_jacobi(source, start, end))
        if nodes[0] <= beta <= nodes[-1]:
            break
        size *= 2
    outer = slepian_basis(source, start, end)
    beta = min(max(beta, outer.x_min), outer.x_max)
    w = witness_mixed(basis, outer, pi_target, alpha, beta)
    return WitnessFunction(w.function, (float(eps_target), float(pi_target)), w.achieved,
                           w.construction, w.outer_window)


def random_functions(source, n, count, rng, extra=24):
    """Random unit-norm coefficient vectors on degrees ``0..n + extra``.

    One third are plain Gaussian, one third are tilted towards the ends of
    the spectrum of ``J_{n+extra}``, and one third put random weight on the
    extreme eigenfunction of ``J_n`` plus a tilted tail, which probes the
    corners of the rectangle. Columns are the functions.
    """
    D = n + extra
    big = slepian_basis(source, 0, D)
    x = big.eigenvalues[:, None]
    third = count // 3
    plain = rng.standard_normal((D + 1, count - 2 * third))
    tilt = rng.choice([-1.0, 1.0], size=third) * rng.uniform(5.0, 200.0, size=third)
    env = np.exp(tilt[None, :] * x - np.abs(tilt)[None, :])
    tilted = big.coefficients @ (rng.standard_normal((D + 1, third)) * env)
    head = slepian_basis(source, 0, n)
    side = rng.choice([0, -1], size=third)
    lam = rng.uniform(0.0, 1.0, size=third)
    tilt2 = np.where(side == -1, 1.0, -1.0) * rng.uniform(20.0, 200.0, size=third)
    env2 = np.exp(tilt2[None, :] * x - np.abs(tilt2)[None, :])
    tail = big.coefficients @ (rng.standard_normal((D + 1, third)) * env2)
    tail[: n + 1] = 0.0
    tail /= np.linalg.norm(tail, axis=0)
    corner = np.sqrt(1.0 - lam)[None, :] * tail
    corner[: n + 1] += np.sqrt(lam)[None, :] * head.coefficients[:, side]
    C = np.concatenate([plain, tilted, corner], axis=1)
    return C / np.linalg.norm(C, axis=0)


def moments(source, C, m0=0):
    """Mean values and variances of the coefficient columns of ``C``."""
    D = m0 + C.shape[0] - 1
    J = build_jacobi(source, m0, D)
    JC = J.matvec(C)
    eps = np.sum(C * JC, axis=0)
    _, b = source.arrays(D + 2)
    second = np.sum(JC * JC, axis=0) + b[D + 1] ** 2 * C[-1] ** 2
    if m0 >= 1:
        second += b[m0] ** 2 * C[0] ** 2
    return eps, np.maximum(second - eps * eps, 0.0)


def random_points(source, m, n, count, seed=0):
    """``(eps, pi, var)`` arrays for :func:`random_functions` samples."""
    rng = np.random.default_rng(seed)
    C = random_functions(source, n, count, rng)
    eps, var = moments(source, C)
    pi = np.sum(C[m:n + 1] ** 2, axis=0)
    return eps, pi, var
