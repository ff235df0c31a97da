from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from quasimod.eisenstein import eisenstein_E
from quasimod.periods import (
    FIRST_KIND,
    SECOND_KIND,
    BadC,
    HypergeomParams,
    OutOfDomain,
    a0_value,
    a_constant_check,
    a_from_monodromy,
    boundary_points,
    eisenstein_via_periods,
    f_recursion,
    f_recursion_negated_shift,
    f_series,
    hyp2f1,
    hyp2f1_near_one,
    hypergeom_series,
    legendre_check,
    picard_fuchs_residual,
    qtau_map,
    schwarz_map,
    tau_of_q,
)
from quasimod.qseries import PuiseuxSeries


def coeffs(s, n):
    return [s.coeff(k) for k in range(n)]


def test_hypergeom_examples():
    assert coeffs(hypergeom_series(FIRST_KIND, 2), 2) == [1, Fraction(5, 36)]
    assert hypergeom_series(SECOND_KIND, 0).coeff(0) == 1
    one = HypergeomParams(Fraction(1), Fraction(1), Fraction(1))
    assert coeffs(hypergeom_series(one, 8), 9) == [1] * 9


def test_bad_c():
    with pytest.raises(BadC):
        hypergeom_series(HypergeomParams(Fraction(1), Fraction(1), Fraction(-2)), 4)


@pytest.mark.parametrize("which", ["first", "second"])
def test_picard_fuchs_residual(which):
    assert picard_fuchs_residual(which, 40).is_zero()


def test_picard_fuchs_sensitivity():
    F = hypergeom_series(FIRST_KIND, 40)
    bump = F + PuiseuxSeries.monomial(Fraction(1, 10**6), 7, F.prec)
    r = picard_fuchs_residual("first", 40, bump)
    assert not r.is_zero()
    assert min(e for e, c in r.items() if c) <= 7


def test_f_values():
    # frozen from the corrected recursion
    assert f_recursion(3) == [0, Fraction(13, 18), Fraction(719, 1728), Fraction(1467821, 5038848)]


def test_negated_shift_recursion_agrees_only_at_f1():
    a, b = f_recursion(3), f_recursion_negated_shift(3)
    assert a[:2] == b[:2]
    assert b[2] == Fraction(95, 1728) != a[2]


def test_f_matches_connection_formula_numerically():
    # F(1/6,5/6,1|1-t) = -(1/(2 pi)) (F(t) ln(t/432) + f(t)) for small t; f from mpmath
    t = mpmath.mpf("1e-3")
    with mpmath.workdps(60):
        lhs = oracles.hyp2f1(Fraction(1, 6), Fraction(5, 6), 1, 1 - t, dps=60)
        F = oracles.hyp2f1(Fraction(1, 6), Fraction(5, 6), 1, t, dps=60)
        f_num = -lhs * 2 * mpmath.pi - F * mpmath.log(t / 432)
        fs = f_series(12)
        f_ser = sum(mpmath.mpf(c.numerator) / c.denominator * t**k for k, c in enumerate(coeffs(fs, 13)))
        assert abs(f_num - f_ser) < mpmath.mpf(10) ** -30


def test_qtau_leading_terms():
    assert coeffs(qtau_map(2), 3) == [0, Fraction(1, 432), Fraction(13, 7776)]


def test_tau_of_q_inverts():
    q = qtau_map(12)
    assert q.compose(tau_of_q(12)) == PuiseuxSeries([0, 1], N=12)


def test_eisenstein_via_periods_first_terms():
    e2, e4, e6 = eisenstein_via_periods(3)
    assert (e2.coeff(1), e4.coeff(1), e6.coeff(1)) == (-24, 240, -504)


def test_eisenstein_via_periods_to_order_60():
    for w, s in zip((2, 4, 6), eisenstein_via_periods(60)):
        assert s == eisenstein_E(w, 60)


@settings(max_examples=25, deadline=None)
@given(st.fractions(min_value=Fraction(-9, 10), max_value=Fraction(9, 10), max_denominator=50),
    st.fractions(min_value=Fraction(-3, 10), max_value=Fraction(3, 10), max_denominator=50),
)
def test_hyp2f1_matches_mpmath(re, im):
    z = mpmath.mpc(float(re), float(im))
    if abs(z) > 0.93:
        return
    for prm in (FIRST_KIND, SECOND_KIND):
        got = hyp2f1(prm, z, prec=200)
        with mpmath.workprec(200):
            want = oracles.hyp2f1(prm.a, prm.b, prm.c, z, dps=60)
            assert abs(got - want) < mpmath.mpf(10) ** -50


def test_hyp2f1_out_of_domain():
    with pytest.raises(OutOfDomain):
        hyp2f1(FIRST_KIND, mpmath.mpf("0.99"))


@pytest.mark.parametrize("t", ["1e-6", "1e-3", "0.05"])
def test_hyp2f1_near_one_matches_mpmath(t):
    t = mpmath.mpf(t)
    got = hyp2f1_near_one(FIRST_KIND, t, prec=256)
    with mpmath.workdps(80):
        want = oracles.hyp2f1(Fraction(1, 6), Fraction(5, 6), 1, 1 - t)
        assert abs(got - want) < mpmath.mpf(10) ** -60


@pytest.mark.parametrize("psi", [0, 1, Fraction(3, 10)])
def test_legendre_relation_negative_orientation(psi):
    assert legendre_check(psi, 256, target_sign=-1) < mpmath.mpf(10) ** -50


def test_legendre_deviation_shrinks_with_precision():
    lo = legendre_check(0, 128, target_sign=-1)
    hi = legendre_check(0, 256, target_sign=-1)
    assert hi < lo * mpmath.mpf(10) ** -10 or hi < mpmath.mpf(10) ** -70


def test_schwarz_map():
    assert abs(schwarz_map(Fraction(1, 2)).to_mpc() - 1j) < mpmath.mpf(10) ** -60
    v = schwarz_map(mpmath.mpc("0.5", "0.2"))
    with mpmath.workprec(256):
        assert abs(abs(v.to_mpc()) - 1) < mpmath.mpf(10) ** -30


def test_boundary_points_on_unit_circle():
    for kind, *_, re, im in boundary_points(6):
        if kind == "arc":
            assert abs(complex(re, im)) == pytest.approx(1, abs=1e-12)
        else:
            assert re == 0.0 and im >= 1 - 1e-12


def test_a0():
    with mpmath.workdps(40):
        assert abs(a0_value(256) - mpmath.pi / mpmath.sqrt(3)) < mpmath.mpf(10) ** -30


def test_a_constant():
    rep = a_constant_check()
    assert rep.monotone
    assert rep.deviations[1] < mpmath.mpf(10) ** -8
    assert abs(rep.extrapolated - mpmath.mpf(1) / 432) < mpmath.mpf(10) ** -10


def test_a_from_monodromy():
    with mpmath.workdps(60):
        assert abs(a_from_monodromy() - mpmath.mpf(1) / 432) < mpmath.mpf(10) ** -40
