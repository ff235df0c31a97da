from fractions import Fraction

import pytest
from hypothesis import given

import properties
from quasimod.sympoly import (
    DELTA,
    NotExact,
    ParamFraction,
    ParamOneForm,
    ParamPoly,
    as_catalog_monomial,
    pair,
    solve_linear,
    t1,
    t2,
    t3,
    total_differential,
    weight_grading,
)
from quasimod.gaussmanin import RAMANUJAN, VectorFieldT


def test_parse_and_print_delta():
    assert ParamPoly.parse("27*t3^2 - t2^3") == DELTA
    assert str(DELTA) == "27*t3^2 - t2^3"


def test_substitute_identity():
    p = ParamPoly.parse("t1^2*t3 - 5/3*t2 + 7")
    assert p.substitute({"t1": t1, "t2": t2, "t3": t3}) == p


def test_binomial_square_vanishes():
    assert ((t1 + t2) * (t1 + t2) - t1 * t1 - t1 * t2 * 2 - t2 * t2).is_zero()


def test_differential_of_delta():
    assert total_differential(DELTA) == ParamOneForm([0, t2 * t2 * (-3), t3 * 54])


def test_differential_of_constant():
    assert total_differential(ParamPoly.parse("5")).is_zero()


def test_differential_quotient_rule():
    inv = ParamFraction(ParamPoly.parse("1"), {"Delta": 1})
    want = ParamOneForm([0, ParamFraction(t2 * t2 * 3, {"Delta": 2}), ParamFraction(t3 * (-54), {"Delta": 2})])
    assert total_differential(inv) == want


def test_pair_examples():
    assert pair(total_differential(t1), RAMANUJAN) == t1 * t1 - t2 * Fraction(1, 12)
    # frozen: 54 t3 R3 - 3 t2^2 R2 expanded by hand
    assert pair(total_differential(DELTA), RAMANUJAN) == t1 * DELTA * 12
    assert pair(ParamOneForm([0, 0, 0]), RAMANUJAN).is_zero()


def test_weight_grading_examples():
    assert weight_grading(DELTA) == {12}
    assert weight_grading(t1 * t1 - t2 * Fraction(1, 12)) == {4}
    assert weight_grading(t1 + t2) == {2, 4}


def test_catalog_monomial():
    c, e = as_catalog_monomial(DELTA * DELTA * 3)
    assert (c, e) == (3, {"Delta": 2})
    with pytest.raises(NotExact):
        as_catalog_monomial(t1 + 1)


def test_fraction_normalizes_by_cross_multiplication():
    a = ParamFraction(DELTA * t1, {"Delta": 1})
    assert a == ParamFraction(t1)
    assert a.is_polynomial()


def test_solve_linear():
    m = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(3)]]
    assert solve_linear(m, [Fraction(3), Fraction(5)]) == [Fraction(4, 5), Fraction(7, 5)]


def test_vector_field_components():
    v = VectorFieldT([t1, t2, t3])
    assert pair(total_differential(t1 * t2), v) == t1 * t2 * 2


test_fraction_properties = properties.build("ParamFraction cross-multiplication", 200)
test_total_differential_derivation = properties.build("total differential is a derivation", 100)


@given(properties.polys(), properties.polys())
def test_weights_add_under_products(a, b):
    if a.is_zero() or b.is_zero() or not a.is_homogeneous() or not b.is_homogeneous():
        return
    (wa,), (wb,) = weight_grading(a), weight_grading(b)
    assert weight_grading(a * b) == {wa + wb}
