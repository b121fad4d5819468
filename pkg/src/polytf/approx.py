"""Localized approximation in the eigenbasis of a degree window."""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, WindowError
from .localization import FunctionRep, _require_normalized, _variance_raw
from .quadrature import gauss_rule
from .tridiag import build_jacobi
from .weights import legendre

ENDPOINT_TOL = 1e-12
BOUND_RTOL = 1e-12
BOUND_KINDS = ("lower", "upper", "centered")


def _check_interval(interval):
    lo, hi = (float(v) for v in interval)
    if not lo < hi:
        raise DomainError(f"interval needs lo < hi, got [{lo}, {hi}]")
    if lo < -1.0 - ENDPOINT_TOL or hi > 1.0 + ENDPOINT_TOL:
        raise DomainError(f"interval [{lo}, {hi}] is not contained in [-1, 1]")
    return lo, hi


@dataclass(frozen=True)
class ConcentrationSpec:
    """An interval ``[lo, hi]``, a window ``(m, n)`` and a level ``eps_m >= 0``."""

    interval: tuple
    m: int
    n: int
    level: float

    def __post_init__(self):
        _check_interval(self.interval)
        if self.level < 0:
            raise DomainError(f"concentration level must be >= 0, got {self.level}")
        if self.m < 0 or self.n < self.m:
            raise WindowError(f"need 0 <= m <= n, got m={self.m}, n={self.n}")

    def holds(self, f):
        """Whether ``f`` is ``level``-concentrated on the interval."""
        return concentration(f, self.interval, self.m).value <= self.level


@dataclass(frozen=True)
class Concentration:
    """Outcome of :func:`concentration`.

    ``approximate`` is set when no closed-form associated density was
    available; ``error_estimate`` is then the change under doubling the rule.
    """

    value: float
    approximate: bool
    error_estimate: float


@dataclass(frozen=True)
class ReconstructionReport:
    selected: tuple
    residual: float
    bound: float = None
    bound_kind: str = None
    bound_satisfied: bool = None

    def as_dict(self):
        return {
            "selected": list(self.selected),
            "residual": self.residual,
            "bound": self.bound,
            "bound_kind": self.bound_kind,
            "bound_satisfied": self.bound_satisfied,
        }


def shift_to_associated(f, m):
    """Image of ``f`` under ``S_m: p_l -> p_{l-m}(., m)``.

    The coefficients are reused unchanged against the associated source, so
    the norm is preserved exactly.
    """
    if m < 0:
        raise WindowError(f"shift m must be >= 0, got {m}")
    if f.m0 < m:
        low = f.coeffs[: m - f.m0]
        if np.any(low != 0.0):
            raise DomainError(f"function has non-zero coefficients below index {m}")
        return FunctionRep(f.source.associated(m), 0, f.coeffs[m - f.m0:])
    return FunctionRep(f.source.associated(m), f.m0 - m, f.coeffs)


def _angle_density(src):
    # density of the (associated) measure in the angle variable x = cos t
    family = src.family
    if family not in ("chebyshev1", "chebyshev2"):
        return None
    if src.shift >= 1:
        return lambda t: (2.0 / math.pi) * np.sin(t) ** 2
    if family == "chebyshev1":
        return lambda t: np.ones_like(t)
    return lambda t: np.sin(t) ** 2


_GL = None


def _gauss_legendre():
    global _GL
    if _GL is None:
        rule = gauss_rule(legendre(), 32)
        _GL = (rule.nodes, rule.weights)
    return _GL


def _composite(fn, t0, t1, panels):
    nodes, weights = _gauss_legendre()
    edges = np.linspace(t0, t1, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    t = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
    w = (half[:, None] * weights[None, :]).ravel()
    return float(fn(t) @ w)


def _outside_closed_form(g, density, lo, hi):
    freq = 2 * (g.degree + 2)

    def integrand(t):
        return g(np.cos(t)) ** 2 * density(t)

    pieces = []
    t_hi = math.acos(min(1.0, max(-1.0, hi)))
    t_lo = math.acos(min(1.0, max(-1.0, lo)))
    if t_hi > 0.0:
        pieces.append((0.0, t_hi))
    if t_lo < math.pi:
        pieces.append((t_lo, math.pi))
    total = coarse = 0.0
    for t0, t1 in pieces:
        panels = int(math.ceil((t1 - t0) * freq / 40.0)) + 1
        total += _composite(integrand, t0, t1, 2 * panels)
        coarse += _composite(integrand, t0, t1, panels)
    return total, abs(total - coarse)


def _outside_by_nodes(g, lo, hi, N):
    rule = gauss_rule(g.source, N)
    out = (rule.nodes < lo - ENDPOINT_TOL) | (rule.nodes > hi + ENDPOINT_TOL)
    return float(np.sum(rule.weights[out] * g(rule.nodes[out]) ** 2))


def concentration(f, interval, m):
    """Smallest ``eps_m`` for which ``f`` is ``eps_m``-concentrated on ``interval``.

    Returns ``(int_{[-1,1] \\ A} |S_m f|^2 w_m)^{1/2} / ||f||``. Chebyshev
    families use their closed-form associated densities; every other family
    classifies the nodes of a large Gauss rule for ``mu_m`` and flags the
    result as approximate.
    """
    lo, hi = _check_interval(interval)
    nrm = f.norm
    if nrm == 0.0:
        raise DomainError("concentration is undefined for the zero function")
    g = shift_to_associated(f, m)
    if lo <= -1.0 and hi >= 1.0:
        return Concentration(0.0, False, 0.0)
    density = _angle_density(g.source)
    if density is not None:
        outside, err = _outside_closed_form(g, density, lo, hi)
        approximate = False
    else:
        N = max(400, 8 * (g.degree + 1))
        outside = _outside_by_nodes(g, lo, hi, 2 * N)
        err = abs(outside - _outside_by_nodes(g, lo, hi, N))
        approximate = True
    value = math.sqrt(max(outside, 0.0)) / nrm
    err_value = math.sqrt(err) / nrm
    return Concentration(value, approximate, err_value)


def _window_coefficients(f, basis):
    m, n = basis.m, basis.n
    c = f.coefficient_array(m, n)
    if not np.isclose(c @ c, f.coeffs @ f.coeffs, rtol=0.0, atol=1e-15):
        raise DomainError(f"function is not contained in the window {m}..{n}")
    return c


def select_nodes(nodes, interval):
    """1-based indices of the nodes inside the closed interval (tolerance 1e-12)."""
    lo, hi = interval
    inside = (nodes >= lo - ENDPOINT_TOL) & (nodes <= hi + ENDPOINT_TOL)
    return np.flatnonzero(inside) + 1


def approximation_bounds(eps, var, a):
    """The three residual bounds for an ``a``-neighbourhood.

    Returns a dict ``kind -> (interval, bound)`` with the intervals
    ``[-1, -1 + a]``, ``[1 - a, 1]`` and ``[eps - a, eps + a]``. The centred
    entry is omitted when its interval leaves [-1, 1].
    """
    if a <= 0:
        raise DomainError(f"a must be positive, got {a}")
    out = {
        "lower": ((-1.0, -1.0 + a), (1.0 + eps) / a),
        "upper": ((1.0 - a, 1.0), (1.0 - eps) / a),
    }
    if eps - a >= -1.0 - ENDPOINT_TOL and eps + a <= 1.0 + ENDPOINT_TOL:
        out["centered"] = ((eps - a, eps + a), var / (a * a))
    return out


def _matching_bound(lo, hi, eps, var):
    found = []
    if abs(lo + 1.0) <= ENDPOINT_TOL and hi + 1.0 > 0:
        found.append(("lower", (1.0 + eps) / (hi + 1.0)))
    if abs(hi - 1.0) <= ENDPOINT_TOL and 1.0 - lo > 0:
        found.append(("upper", (1.0 - eps) / (1.0 - lo)))
    a = 0.5 * (hi - lo)
    if (abs(0.5 * (lo + hi) - eps) <= ENDPOINT_TOL
            and lo >= -1.0 - ENDPOINT_TOL and hi <= 1.0 + ENDPOINT_TOL):
        found.append(("centered", var / (a * a)))
    if not found:
        return None, None
    return min(found, key=lambda kv: kv[1])


def reconstruct_on_interval(f, basis, interval):
    """Keep only the eigenfunctions whose eigenvalue lies in ``interval``.

    The residual ``||f - sum_{x_k in A} <f, psi_k> psi_k||`` is computed in
    coefficient space. When the interval is ``[-1, -1 + a]``, ``[1 - a, 1]``
    or ``[eps(f) - a, eps(f) + a]`` the matching bound on the squared
    residual is evaluated as well (the tightest one if several match).
    """
    lo, hi = _check_interval(interval)
    _require_normalized(f)
    c = _window_coefficients(f, basis)
    V = basis.coefficients
    proj = V.T @ c
    sel = select_nodes(basis.eigenvalues, (lo, hi))
    recon = V[:, sel - 1] @ proj[sel - 1]
    residual = float(np.linalg.norm(c - recon))
    window = FunctionRep(f.source, basis.m, c)
    var, eps = _variance_raw(window, build_jacobi(f.source, basis.m, basis.n))
    kind, bound = _matching_bound(lo, hi, eps, max(var, 0.0))
    satisfied = None
    if bound is not None:
        satisfied = residual ** 2 <= bound * (1.0 + BOUND_RTOL) + 1e-15
    return ReconstructionReport(tuple(int(k) for k in sel), residual, bound, kind, satisfied)


def node_count_fraction(basis, interval):
    """``#{k : x_{n,k}^m in A} / (n - m)``.

    ``basis`` may be a :class:`~polytf.spectral.SlepianBasis` or a plain array
    of eigenvalues; the interval is closed with tolerance 1e-12.
    """
    nodes = np.asarray(getattr(basis, "eigenvalues", basis), dtype=np.float64)
    if nodes.shape[0] < 2:
        raise WindowError("node fraction needs n > m")
    lo, hi = _check_interval(interval)
    return select_nodes(nodes, (lo, hi)).shape[0] / (nodes.shape[0] - 1)


def arcsine_fraction(interval):
    """Limit ``(alpha - beta) / pi`` for ``interval = [cos alpha, cos beta]``."""
    lo, hi = _check_interval(interval)
    return (math.acos(max(-1.0, lo)) - math.acos(min(1.0, hi))) / math.pi


def random_window_polynomials(basis, count, rng, localized_fraction=0.5):
    """Random unit-norm coefficient vectors of the window, one per column.

    A ``localized_fraction`` of them are drawn in the eigenbasis with an
    exponential tilt towards one end of the spectrum, so that boundary
    localized polynomials are well represented.
    """
    dim = basis.dim
    n_loc = int(round(localized_fraction * count))
    plain = rng.standard_normal((dim, count - n_loc))
    tilt = rng.uniform(-40.0, 40.0, size=n_loc)
    envelope = np.exp(tilt[None, :] * basis.eigenvalues[:, None] - np.abs(tilt)[None, :])
    loc = basis.coefficients @ (rng.standard_normal((dim, n_loc)) * envelope)
    C = np.concatenate([plain, loc], axis=1)
    return C / np.linalg.norm(C, axis=0)


def random_bound_trials(basis, a_values, trials=1000, seed=0):
    """Count violations of the three residual bounds over random polynomials.

    Returns a dict ``(kind, a) -> (checked, violations, worst_ratio)`` where
    ``worst_ratio`` is the largest ``residual^2 / bound`` seen.
    """
    rng = np.random.default_rng(seed)
    C = random_window_polynomials(basis, trials, rng)
    J = build_jacobi(basis.source, basis.m, basis.n)
    JC = J.matvec(C)
    eps = np.sum(C * JC, axis=0)
    _, b = basis.source.arrays(basis.n + 2)
    second = np.sum(JC * JC, axis=0) + b[basis.n + 1] ** 2 * C[-1] ** 2
    if basis.m >= 1:
        second += b[basis.m] ** 2 * C[0] ** 2
    var = np.maximum(second - eps ** 2, 0.0)
    weights = (basis.coefficients.T @ C) ** 2
    x = basis.eigenvalues[:, None]
    out = {}
    for a in a_values:
        lower = x <= -1.0 + a + ENDPOINT_TOL
        upper = x >= 1.0 - a - ENDPOINT_TOL
        centered = np.abs(x - eps[None, :]) <= a + ENDPOINT_TOL
        cases = {
            "lower": (lower, (1.0 + eps) / a, np.ones(trials, bool)),
            "upper": (upper, (1.0 - eps) / a, np.ones(trials, bool)),
            "centered": (centered, var / a ** 2,
                         (eps - a >= -1.0 - ENDPOINT_TOL) & (eps + a <= 1.0 + ENDPOINT_TOL)),
        }
        for kind, (inside, bound, valid) in cases.items():
            inside = np.broadcast_to(inside, weights.shape)
            resid2 = np.sum(np.where(inside, 0.0, weights), axis=0)
            ok = resid2 <= bound * (1.0 + BOUND_RTOL) + 1e-15
            ratio = np.where(bound > 0, resid2 / np.where(bound > 0, bound, 1.0), 0.0)
            out[(kind, a)] = (int(valid.sum()), int(np.sum(~ok & valid)),
                              float(ratio[valid].max()) if valid.any() else 0.0)
    return out
