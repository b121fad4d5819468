import numpy as np
import pytest
from scipy import special

import polytf

FAMILIES = {
    "chebyshev1": polytf.chebyshev1,
    "chebyshev2": polytf.chebyshev2,
    "legendre": polytf.legendre,
    "jacobi(0.5,-0.5)": lambda: polytf.jacobi(0.5, -0.5),
    "jacobi(-0.3,1.7)": lambda: polytf.jacobi(-0.3, 1.7),
}


@pytest.fixture(params=sorted(FAMILIES))
def source(request):
    return FAMILIES[request.param]()


def scipy_gauss(src, N):
    """Gauss rule for the base weight of ``src`` from scipy (independent oracle)."""
    if src.family == "chebyshev1":
        return special.roots_chebyt(N)
    if src.family == "chebyshev2":
        return special.roots_chebyu(N)
    if src.family == "legendre":
        return special.roots_legendre(N)
    if src.family == "jacobi":
        # scipy weights (1-x)^alpha (1+x)^beta, same convention
        return special.roots_jacobi(N, src.alpha, src.beta)
    raise ValueError(src.family)


def stieltjes(nodes, weights, count):
    """Recurrence coefficients of a discrete measure by the Stieltjes procedure."""
    a = np.zeros(count)
    b = np.zeros(count + 1)
    b[0] = np.sqrt(weights.sum())
    prev = np.zeros_like(nodes)
    cur = np.full_like(nodes, 1.0 / b[0])
    for l in range(count):
        a[l] = np.sum(weights * nodes * cur * cur)
        nxt = (nodes - a[l]) * cur - b[l] * prev if l else (nodes - a[l]) * cur
        b[l + 1] = np.sqrt(np.sum(weights * nxt * nxt))
        prev, cur = cur, nxt / b[l + 1]
    return a, b


def random_rep(src, m0, size, rng):
    c = rng.standard_normal(size)
    return polytf.FunctionRep(src, m0, c / np.linalg.norm(c))
