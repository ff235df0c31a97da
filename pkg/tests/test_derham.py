from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from quasimod.derham import FAMILY, cofactors, exact_generator, reduce
from quasimod.sympoly import DELTA, ParamPoly, weight_grading, x

P = ParamPoly.parse

# x^n dx/y = beta * x dx/y + alpha * dx/y
REDUCTIONS = {
    2: ("2*t1", "-t1^2 + 1/12*t2"),
    3: ("3*t1^2 + 3/20*t2", "-2*t1^3 + 1/10*t1*t2 + 1/10*t3"),
    4: ("4*t1^3 + 3/5*t1*t2 + 1/7*t3", "-3*t1^4 - 1/10*t1^2*t2 + 9/35*t1*t3 + 5/336*t2^2"),
    5: (
        "5*t1^4 + 3/2*t1^2*t2 + 5/7*t1*t3 + 7/240*t2^2",
        "-4*t1^5 - 2/3*t1^3*t2 + 2/7*t1^2*t3 + 19/420*t1*t2^2 + 1/30*t2*t3",
    ),
}


def xpow(n):
    p = P("1")
    for _ in range(n):
        p = p * x
    return p


@pytest.mark.parametrize("n", sorted(REDUCTIONS))
def test_reduction_table(n):
    beta, alpha = REDUCTIONS[n]
    r = reduce(xpow(n))
    assert r.beta == P(beta)
    assert r.alpha == P(alpha)


def test_basis_reduces_to_itself():
    assert (reduce(P("1")).alpha, reduce(P("1")).beta) == (1, 0)
    assert (reduce(x).alpha, reduce(x).beta) == (0, 1)


def test_cofactor_identity():
    a1, a2 = cofactors()
    assert (a2 * FAMILY.P - a1 * FAMILY.P.diff("x") - DELTA).is_zero()
    assert a1.leading_term() == (P("-36*x^4").leading_term())
    assert a2.leading_term() == (P("-108*x^3").leading_term())


@pytest.mark.parametrize("a", range(0, 6))
def test_exact_forms_reduce_to_zero(a):
    assert reduce(exact_generator(a)).is_zero()


@pytest.mark.parametrize("n", range(2, 9))
def test_reduction_weights(n):
    r = reduce(xpow(n))
    assert weight_grading(r.alpha.as_poly()) == {2 * n}
    assert weight_grading(r.beta.as_poly()) == {2 * n - 2}


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=1, max_size=7), st.integers(-4, 4))
def test_reduce_is_linear(cs, k):
    p = sum((xpow(i) * c for i, c in enumerate(cs)), P("0"))
    q = xpow(len(cs)) * k
    lhs, a, b = reduce(p + q), reduce(p), reduce(q)
    assert lhs.alpha == a.alpha + b.alpha
    assert lhs.beta == a.beta + b.beta


# parameter points with three real roots; (t1, t2, t3)
POINTS = [(Fraction(1, 5), 7, 1), (Fraction(-1, 3), 5, Fraction(-1, 2)), (0, 3, 0)]


@pytest.mark.parametrize("pt", POINTS)
@pytest.mark.parametrize("n", [2, 3, 4, 5, 7])
def test_reduction_matches_numeric_periods(pt, n):
    t1v, t2v, t3v = pt
    vals = {"t1": t1v, "t2": t2v, "t3": t3v}
    r = reduce(xpow(n))
    a = r.alpha.as_poly().evaluate(vals)
    b = r.beta.as_poly().evaluate(vals)
    with mpmath.workdps(40):
        lhs = oracles.real_period(lambda s: s**n, t1v, t2v, t3v)
        w0 = oracles.real_period(lambda s: 1, t1v, t2v, t3v)
        w1 = oracles.real_period(lambda s: s, t1v, t2v, t3v)
        rhs = mpmath.mpf(a.numerator) / a.denominator * w0 + mpmath.mpf(b.numerator) / b.denominator * w1
        assert abs(lhs - rhs) < mpmath.mpf(10) ** -30 * max(1, abs(lhs))


def float_eval(g, s):
    # exponents of x only; parameters fixed at (1/5, 7, 1)
    pt = {"t1": Fraction(1, 5), "t2": 7, "t3": 1}
    return sum(g.coeff_in("x", k).evaluate(pt) * s**k for k in range(g.degree("x") + 1))


def test_exact_form_has_zero_period():
    g = exact_generator(3)
    with mpmath.workdps(40):
        v = oracles.real_period(lambda s: float_eval(g, s), Fraction(1, 5), 7, 1)
        assert abs(v) < mpmath.mpf(10) ** -30
