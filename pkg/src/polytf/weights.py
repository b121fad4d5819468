"""Recurrence coefficients for orthonormal polynomial families on [-1, 1].

A :class:`RecurrenceSource` yields the pairs ``(a_l, b_l)`` of

    b_{l+1} p_{l+1}(x) = (x - a_l) p_l(x) - b_l p_{l-1}(x),   p_0 = 1 / b_0,

with ``b_0`` the square root of the total mass of the weight.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError, WindowError

FAMILIES = ("chebyshev1", "chebyshev2", "legendre", "jacobi", "custom")
TAIL_RULES = ("constant", "error")


@dataclass(frozen=True, eq=False)
class RecurrenceSource:
    """Immutable description of a weight through its recurrence coefficients.

    Use the constructors :func:`chebyshev1`, :func:`chebyshev2`,
    :func:`legendre`, :func:`jacobi`, :func:`custom` or :func:`from_config`
    rather than instantiating directly.

    ``shift`` > 0 turns the source into the associated sequence of order
    ``shift``: coefficients ``a_{shift+l}``, ``b_{shift+l}`` and ``b_0 = 1``,
    so that ``p_0(x, shift) = 1`` and the associated measure has unit mass.
    """

    family: str
    alpha: float = 0.0
    beta: float = 0.0
    custom_a: np.ndarray = field(default=None, repr=False)
    custom_b: np.ndarray = field(default=None, repr=False)
    tail: str = "constant"
    shift: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ParameterError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.family == "jacobi":
            if not (self.alpha > -1.0):
                raise ParameterError(f"jacobi alpha must be > -1, got {self.alpha}")
            if not (self.beta > -1.0):
                raise ParameterError(f"jacobi beta must be > -1, got {self.beta}")
        if self.shift < 0:
            raise WindowError(f"shift must be >= 0, got {self.shift}")

    # -- identity -----------------------------------------------------------

    @property
    def symmetric(self):
        """True when all ``a_l`` vanish (weight even about 0)."""
        if self.family in ("chebyshev1", "chebyshev2", "legendre"):
            return True
        if self.family == "jacobi":
            return self.alpha == self.beta
        return False

    @property
    def base(self):
        """The unshifted source this one was derived from."""
        if self.shift == 0:
            return self
        return RecurrenceSource(self.family, self.alpha, self.beta,
                                self.custom_a, self.custom_b, self.tail, 0)

    def associated(self, m):
        """Source of the associated polynomials ``p_l(x, m)``."""
        if m < 0:
            raise WindowError(f"associated order must be >= 0, got {m}")
        if m == 0:
            return self
        return RecurrenceSource(self.family, self.alpha, self.beta,
                                self.custom_a, self.custom_b, self.tail, self.shift + m)

    def same_weight(self, other):
        """Whether two sources describe the same coefficient sequence."""
        if not isinstance(other, RecurrenceSource):
            return False
        if (self.family, self.alpha, self.beta, self.tail, self.shift) != (
                other.family, other.alpha, other.beta, other.tail, other.shift):
            return False
        if self.family != "custom":
            return True
        return (np.array_equal(self.custom_a, other.custom_a)
                and np.array_equal(self.custom_b, other.custom_b))

    def describe(self):
        """Plain dict suitable for JSON output."""
        out = {"family": self.family}
        if self.family == "jacobi":
            out.update(alpha=self.alpha, beta=self.beta)
        if self.family == "custom":
            out.update(a=self.custom_a.tolist(), b=self.custom_b.tolist(), tail=self.tail)
        if self.shift:
            out["shift"] = self.shift
        return out

    # -- coefficients -------------------------------------------------------

    def _raw(self, count):
        """Unshifted a_0..a_{count-1}, b_0..b_{count-1} of the base weight."""
        l = np.arange(count, dtype=np.float64)
        if self.family == "chebyshev1":
            a = np.zeros(count)
            b = np.full(count, 0.5)
            if count > 0:
                b[0] = math.sqrt(math.pi)
            if count > 1:
                b[1] = math.sqrt(0.5)
            return a, b
        if self.family == "chebyshev2":
            a = np.zeros(count)
            b = np.full(count, 0.5)
            if count > 0:
                b[0] = math.sqrt(math.pi / 2.0)
            return a, b
        if self.family == "legendre":
            a = np.zeros(count)
            with np.errstate(divide="ignore", invalid="ignore"):
                b = l / np.sqrt(4.0 * l * l - 1.0)
            if count > 0:
                b[0] = math.sqrt(2.0)
            return a, b
        if self.family == "jacobi":
            return _jacobi_coefficients(self.alpha, self.beta, count)
        return self._custom(count)

    def _custom(self, count):
        a_src, b_src = self.custom_a, self.custom_b
        have = a_src.shape[0]
        if count <= have:
            return a_src[:count].copy(), b_src[:count].copy()
        if self.tail == "error":
            raise WindowError(
                f"custom source defines {have} coefficients, {count} requested (tail='error')")
        a = np.empty(count)
        b = np.empty(count)
        a[:have] = a_src
        b[:have] = b_src
        a[have:] = a_src[-1]
        b[have:] = b_src[-1]
        return a, b

    def arrays(self, count):
        """Coefficient arrays ``a[0:count]`` and ``b[0:count]``.

        Parameters
        ----------
        count : int
            Number of leading coefficients to return.

        Returns
        -------
        a, b : ndarray
            Fresh (writable) arrays of length ``count``.
        """
        if count < 0:
            raise WindowError(f"count must be >= 0, got {count}")
        if count == 0:
            return np.zeros(0), np.zeros(0)
        a, b = self._raw(count + self.shift)
        a = a[self.shift:].copy()
        b = b[self.shift:].copy()
        if self.shift:
            b[0] = 1.0
        return a, b

    def coefficients(self, l):
        """The pair ``(a_l, b_l)``."""
        if l < 0:
            raise WindowError(f"coefficient index must be >= 0, got {l}")
        a, b = self.arrays(l + 1)
        return float(a[l]), float(b[l])

    @property
    def total_mass(self):
        """Integral of the weight, ``b_0 ** 2`` (1 for associated sources)."""
        return self.coefficients(0)[1] ** 2


def _jacobi_coefficients(alpha, beta, count):
    # Orthonormal recurrence for w(x) = (1 - x)^alpha (1 + x)^beta.
    a = np.empty(count)
    b = np.empty(count)
    if count == 0:
        return a, b
    s = alpha + beta
    n = np.arange(count, dtype=np.float64)
    a[0] = (beta - alpha) / (s + 2.0)
    if count > 1:
        nn = n[1:]
        a[1:] = (beta * beta - alpha * alpha) / ((2.0 * nn + s) * (2.0 * nn + s + 2.0))
    log_mass = ((s + 1.0) * math.log(2.0) + math.lgamma(alpha + 1.0)
                + math.lgamma(beta + 1.0) - math.lgamma(s + 2.0))
    b[0] = math.exp(0.5 * log_mass)
    if count > 1:
        b[1] = math.sqrt(4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + s) ** 2 * (3.0 + s)))
    if count > 2:
        nn = n[2:]
        num = 4.0 * nn * (nn + alpha) * (nn + beta) * (nn + s)
        den = (2.0 * nn + s) ** 2 * (2.0 * nn + s + 1.0) * (2.0 * nn + s - 1.0)
        b[2:] = np.sqrt(num / den)
    # exact zeros for symmetric weights
    if alpha == beta:
        a[:] = 0.0
    return a, b


def chebyshev1():
    """Chebyshev weight of the first kind, ``1 / sqrt(1 - x^2)``."""
    return RecurrenceSource("chebyshev1")


def chebyshev2():
    """Chebyshev weight of the second kind, ``sqrt(1 - x^2)``."""
    return RecurrenceSource("chebyshev2")


def legendre():
    """Constant weight on [-1, 1]."""
    return RecurrenceSource("legendre")


def jacobi(alpha, beta):
    """Jacobi weight ``(1 - x)^alpha (1 + x)^beta`` with ``alpha, beta > -1``."""
    return RecurrenceSource("jacobi", float(alpha), float(beta))


def custom(a, b, tail="constant"):
    """Source from explicit coefficient arrays.

    Parameters
    ----------
    a, b : array_like
        Coefficients ``a_0..a_{L-1}`` and ``b_0..b_{L-1}``; every ``b_l`` must
        be positive.
    tail : {"constant", "error"}
        Beyond index ``L - 1`` either repeat the last pair or raise
        :class:`~polytf.errors.WindowError`.
    """
    a = np.array(a, dtype=np.float64).ravel()
    b = np.array(b, dtype=np.float64).ravel()
    if a.shape != b.shape or a.size == 0:
        raise ParameterError("custom coefficients need equal, non-zero lengths for a and b")
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        raise ParameterError("custom coefficients must be finite")
    if np.any(b <= 0.0):
        raise ParameterError("custom b coefficients must be strictly positive")
    if tail not in TAIL_RULES:
        raise ParameterError(f"tail must be one of {TAIL_RULES}, got {tail!r}")
    a.setflags(write=False)
    b.setflags(write=False)
    return RecurrenceSource("custom", custom_a=a, custom_b=b, tail=tail)


def from_config(config):
    """Build a source from a mapping such as ``{"family": "jacobi", "alpha": 0.5, "beta": -0.5}``."""
    if not isinstance(config, dict):
        raise ParameterError("family config must be a JSON object")
    family = config.get("family")
    if family == "chebyshev1":
        return chebyshev1()
    if family == "chebyshev2":
        return chebyshev2()
    if family == "legendre":
        return legendre()
    if family == "jacobi":
        try:
            return jacobi(float(config["alpha"]), float(config["beta"]))
        except KeyError as exc:
            raise ParameterError(f"jacobi family requires {exc.args[0]!r}") from None
    if family == "custom":
        if "a" not in config or "b" not in config:
            raise ParameterError("custom family requires 'a' and 'b' arrays")
        return custom(config["a"], config["b"], config.get("tail", "constant"))
    raise ParameterError(f"unknown family {family!r}; expected one of {FAMILIES}")


@dataclass(frozen=True)
class NevaiDiagnostics:
    """Finite-truncation evidence about membership in the Nevai subclass.

    Attributes
    ----------
    truncation : int
        Largest coefficient index inspected, ``L``.
    tail_start : int
        First index of the tail window ``[tail_start, L]``.
    max_abs_a_tail : float
        ``max |a_l|`` over the tail window.
    max_b_deviation_tail : float
        ``max |b_l - 1/2|`` over the tail window.
    partial_sums : ndarray
        ``partial_sums[L'] = sum_{l <= L'} |a_l| + |b_l - 1/2|`` for
        ``L' = 0..L``; ``b_0`` is a mass normalisation and is excluded.
    """

    truncation: int
    tail_start: int
    max_abs_a_tail: float
    max_b_deviation_tail: float
    partial_sums: np.ndarray = field(repr=False)

    @property
    def partial_sum(self):
        return float(self.partial_sums[-1])


def nevai_diagnostics(source, L):
    """Tail suprema and partial summability sums of the coefficients up to ``L``.

    Nothing here decides membership; the caller judges whether the reported
    numbers look like convergence to ``(0, 1/2)`` with a summable defect.
    """
    if L < 1:
        raise WindowError(f"truncation L must be >= 1, got {L}")
    a, b = source.arrays(L + 1)
    dev_a = np.abs(a)
    dev_b = np.abs(b - 0.5)
    dev_b[0] = 0.0
    tail_start = max(1, L // 2)
    return NevaiDiagnostics(
        truncation=L,
        tail_start=tail_start,
        max_abs_a_tail=float(dev_a[tail_start:].max()),
        max_b_deviation_tail=float(dev_b[tail_start:].max()),
        partial_sums=np.cumsum(dev_a + dev_b),
    )
