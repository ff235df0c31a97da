from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from quasimod.arith import (
    AffineCurveModP,
    NotPrime,
    PrimeTooSmall,
    aut_order,
    chebyshev_U,
    count_points,
    is_prime,
    isomorphism_classes,
    parse_curve,
    sigma_k,
    sigma_k_by_classes,
)
from quasimod.genfun import modularity_eta_product, tau

CURVE = parse_curve("y^2+y=x^3-x^2")
PRIMES = [2, 3, 5, 7, 11, 13]


def test_parse_curve():
    assert CURVE == AffineCurveModP(a2=-1, a3=1)


def test_count_examples():
    assert count_points(CURVE, 2) == (4, -2)
    assert count_points(CURVE, 5)[1] == 1
    assert count_points(CURVE, 13)[1] == 4


@pytest.mark.parametrize("p", PRIMES)
def test_count_matches_oracle(p):
    n, a = count_points(CURVE, p)
    assert n == oracles.affine_count(0, -1, 1, 0, 0, p)
    assert a == p - n


@pytest.mark.parametrize("p", PRIMES)
def test_a_p_matches_eta_product(p):
    # includes p = 11, where the curve has bad reduction and both sides are 1
    assert count_points(CURVE, p)[1] == modularity_eta_product(13).coeff(p)


def test_not_prime():
    with pytest.raises(NotPrime):
        count_points(CURVE, 9)
    with pytest.raises(PrimeTooSmall):
        sigma_k(3, 10)


def test_chebyshev():
    assert [chebyshev_U(k, 3, 5) for k in range(4)] == [1, 3, 4, -3]


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_sigma_ten_is_tau_plus_one(p):
    assert sigma_k(p, 10) == tau(p)[p - 1] + 1


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_sigma_small_weights(p):
    assert sigma_k(p, 0) == -p
    assert sigma_k(p, 2) == 1


@pytest.mark.parametrize("p", [5, 7])
@pytest.mark.parametrize("k", [0, 2, 4, 10])
def test_class_enumeration_agrees(p, k):
    assert sigma_k_by_classes(p, k) == sigma_k(p, k)


def test_aut_orders_at_thirteen():
    assert (aut_order(1, 1, 13), aut_order(1, 0, 13), aut_order(0, 1, 13)) == (2, 4, 6)


def test_class_weights_count_curves():
    # sum over classes of (p - 1)/#Aut is the number of nonsingular pairs
    for p in (5, 7, 11):
        total = sum(Fraction(p - 1, aut) for _, aut in isomorphism_classes(p))
        pairs = sum(1 for a in range(p) for b in range(p) if (4 * a**3 + 27 * b * b) % p)
        assert total == pairs


@given(st.integers(2, 200))
def test_is_prime(n):
    assert is_prime(n) == all(n % d for d in range(2, n))
