import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import special

import polytf
from polytf.errors import ParameterError, WindowError

from conftest import scipy_gauss, stieltjes


def test_chebyshev1_coefficients():
    a, b = polytf.chebyshev1().arrays(6)
    assert np.all(a == 0.0)
    assert b[0] == pytest.approx(math.sqrt(math.pi), abs=1e-15)
    assert b[1] == pytest.approx(1 / math.sqrt(2), abs=1e-15)
    assert np.all(b[2:] == 0.5)


def test_coefficients_match_stieltjes_oracle(source):
    nodes, wts = scipy_gauss(source, 80)
    a_ref, b_ref = stieltjes(nodes, wts, 30)
    a, b = source.arrays(31)
    np.testing.assert_allclose(a[:30], a_ref, atol=1e-12)
    np.testing.assert_allclose(b, b_ref, rtol=1e-12)


def test_total_mass_is_integral_of_weight():
    for alpha, beta in [(0.5, -0.5), (-0.3, 1.7), (2.0, 2.0)]:
        mass = 2 ** (alpha + beta + 1) * special.beta(alpha + 1, beta + 1)
        assert polytf.jacobi(alpha, beta).total_mass == pytest.approx(mass, rel=1e-13)
    assert polytf.legendre().total_mass == pytest.approx(2.0, rel=1e-15)


@given(st.floats(-0.95, 4.0), st.floats(-0.95, 4.0))
@settings(max_examples=40, deadline=None)
def test_jacobi_positive_b_and_symmetry(alpha, beta):
    a, b = polytf.jacobi(alpha, beta).arrays(40)
    assert np.all(b > 0)
    if alpha == beta:
        assert np.all(a == 0.0)
    # reflection x -> -x swaps alpha and beta and negates a
    a2, b2 = polytf.jacobi(beta, alpha).arrays(40)
    np.testing.assert_allclose(a2, -a, atol=1e-14)
    np.testing.assert_allclose(b2, b, rtol=1e-13)


def test_jacobi_zero_zero_is_legendre():
    a, b = polytf.jacobi(0.0, 0.0).arrays(20)
    a2, b2 = polytf.legendre().arrays(20)
    np.testing.assert_allclose(a, a2, atol=1e-15)
    np.testing.assert_allclose(b, b2, rtol=1e-14)


def test_jacobi_parameter_validation():
    with pytest.raises(ParameterError):
        polytf.jacobi(-1.0, 0.0)
    with pytest.raises(ParameterError):
        polytf.jacobi(0.0, -2.5)


def test_custom_source_tail_rules():
    src = polytf.custom([0.1, 0.0], [1.0, 0.4], tail="constant")
    a, b = src.arrays(5)
    np.testing.assert_array_equal(a, [0.1, 0.0, 0.0, 0.0, 0.0])
    np.testing.assert_array_equal(b, [1.0, 0.4, 0.4, 0.4, 0.4])
    strict = polytf.custom([0.1, 0.0], [1.0, 0.4], tail="error")
    with pytest.raises(WindowError):
        strict.arrays(3)
    with pytest.raises(ParameterError):
        polytf.custom([0.0], [-1.0])


def test_associated_shift():
    src = polytf.legendre()
    a, b = src.arrays(12)
    a5, b5 = src.associated(5).arrays(7)
    assert b5[0] == 1.0
    np.testing.assert_array_equal(b5[1:], b[6:12])
    np.testing.assert_array_equal(a5, a[5:12])
    assert src.associated(2).associated(3).same_weight(src.associated(5))


def test_from_config():
    src = polytf.from_config({"family": "jacobi", "alpha": 0.5, "beta": -0.5})
    assert (src.family, src.alpha, src.beta) == ("jacobi", 0.5, -0.5)
    with pytest.raises(ParameterError):
        polytf.from_config({"family": "hermite"})
    with pytest.raises(ParameterError):
        polytf.from_config({"family": "jacobi", "alpha": 0.5})


def test_nevai_diagnostics_builtin_families(source):
    d = polytf.nevai_diagnostics(source, 400)
    assert d.max_abs_a_tail < 1e-4
    assert d.max_b_deviation_tail < 1e-4
    # summable defect: the last doubling adds little
    assert d.partial_sums[-1] - d.partial_sums[200] < 0.05


def test_nevai_diagnostics_chebyshev1_exact():
    d = polytf.nevai_diagnostics(polytf.chebyshev1(), 10)
    assert d.max_abs_a_tail == 0.0 and d.max_b_deviation_tail == 0.0
    assert d.partial_sum == pytest.approx(1 / math.sqrt(2) - 0.5, abs=1e-15)
