import pytest

import oracles
from quasimod.sympoly import ParamPoly, weight_grading
from quasimod.weierstrass import (
    classical_recursion,
    curve_residual,
    eisenstein_modular,
    g_coefficient,
    weierstrass_expansion,
)

P = ParamPoly.parse


def test_first_coefficients():
    assert g_coefficient(4) == P("1/20*t2")
    assert g_coefficient(6) == P("1/28*t3")


def test_modular_examples():
    g4 = eisenstein_modular(1)
    assert g4.p == P("1/20*t2") and g4.weight == 4
    g8 = eisenstein_modular(3)
    assert g8.p == P("1/1200*t2^2") and g8.weight == 8


@pytest.mark.parametrize("K", [4, 8])
def test_curve_equation_holds(K):
    xs, ys = weierstrass_expansion(K)
    assert curve_residual(xs, ys).is_zero()


def test_odd_powers_vanish():
    xs, _ = weierstrass_expansion(6)
    assert all(xs.coeffs[k].is_zero() for k in xs.coeffs if k % 2)


def test_order_matching_agrees_with_classical_recursion():
    K = 10
    c, (T2, T3) = oracles.weierstrass_c(K)
    mine = classical_recursion(K)
    for k in range(2, K + 1):
        assert g_coefficient(2 * k) == P(str(c[k]).replace("**", "^"))
        assert mine[k - 2] == g_coefficient(2 * k)


@pytest.mark.parametrize("k", range(1, 8))
def test_weights(k):
    g = eisenstein_modular(k)
    assert weight_grading(g.p) == {2 * k + 2}
