"""Gauss rules generated from Jacobi matrices, and L2(w) inner products."""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, WindowError
from .tridiag import build_jacobi, eigendecompose


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Gauss rule with ``N`` nodes, exact for degree ``2N - 1``.

    ``shift`` is 0 for the base weight and ``m`` for the normalised associated
    measure ``mu_m`` (unit mass).
    """

    nodes: np.ndarray
    weights: np.ndarray
    degree: int
    shift: int

    def integrate(self, values):
        """``sum_i weights[i] * values[..., i]``."""
        return np.asarray(values) @ self.weights


def gauss_rule(source, N, shift=0):
    """Golub-Welsch rule for the (optionally associated) measure of ``source``.

    Nodes are the eigenvalues of the ``N x N`` Jacobi matrix; each weight is the
    total mass times the squared first eigenvector component.
    """
    if N < 1:
        raise WindowError(f"number of nodes must be >= 1, got {N}")
    src = source.associated(shift)
    dec = eigendecompose(build_jacobi(src, 0, N - 1))
    weights = src.total_mass * dec.eigenvectors[0, :] ** 2
    return QuadratureRule(dec.eigenvalues, weights, 2 * N - 1, shift)


def inner_product(f, g, method="parseval"):
    """``<f, g>_w`` for two coefficient representations on the same source.

    ``method="parseval"`` sums coefficient products; ``method="quadrature"``
    evaluates both functions on a Gauss rule exact for their product.
    """
    if not f.source.same_weight(g.source):
        raise DomainError("inner product of functions from different weights")
    if method == "parseval":
        lo = min(f.m0, g.m0)
        hi = max(f.degree, g.degree)
        return float(f.coefficient_array(lo, hi) @ g.coefficient_array(lo, hi))
    if method == "quadrature":
        N = (f.degree + g.degree) // 2 + 1
        rule = gauss_rule(f.source, N)
        return float(rule.integrate(f(rule.nodes) * g(rule.nodes)))
    raise ValueError(f"method must be 'parseval' or 'quadrature', got {method!r}")


def norm(f):
    return float(np.sqrt(inner_product(f, f)))

