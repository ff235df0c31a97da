

from quasimod.gaussmanin import (
    HALPHEN,
    RAMANUJAN,
    alpha_map,
    basis_derivative,
    gamma2_minimal_poly_check,
    gm_closed_form,
    gm_matrix,
    halphen_closed_form,
    halphen_pullback,
    halphen_pullback_report,
    ohyama_F,
    ohyama_field,
    ohyama_tangency_check,
    ramanujan_field,
)
from quasimod.sympoly import DELTA, ParamFraction, ParamPoly, pair, total_differential

P = ParamPoly.parse


def test_matrix_equals_closed_form():
    assert gm_matrix() == gm_closed_form()


def test_trace_vanishes():
    assert gm_matrix().trace().is_zero()


def test_dt3_derivative_of_dx_over_y():
    c = basis_derivative(0, 2)
    assert c.alpha == ParamFraction(P("3*t1*t2 - 9/2*t3"), {"Delta": 1})
    assert c.beta == ParamFraction(P("-3*t2"), {"Delta": 1})


def test_ramanujan_field_values():
    R = ramanujan_field()
    assert R == RAMANUJAN
    assert R.components[0] == P("t1^2 - 1/12*t2")
    assert R.components[1] == P("4*t1*t2 - 6*t3")
    assert R.components[2] == P("6*t1*t3 - 1/3*t2^2")


def test_connection_along_ramanujan():
    # nabla_R (dx/y) = -x dx/y and nabla_R (x dx/y) = 0
    m = gm_matrix().apply(RAMANUJAN)
    assert m[0][0].is_zero() and m[1][0].is_zero() and m[1][1].is_zero()
    assert m[0][1] == -1


def test_ramanujan_field_preserves_delta_up_to_scale():
    assert pair(total_differential(DELTA), RAMANUJAN) == DELTA * P("12*t1")


def test_halphen_dt1_block():
    A = halphen_closed_form()
    den = {"t1-t2": 1, "t1-t3": 1}
    want = [
        [ParamFraction(P("-1/2*t1"), den), ParamFraction(P("1/2"), den)],
        [ParamFraction(P("1/2*t2*t3 - 1/2*t1*t2 - 1/2*t1*t3"), den), ParamFraction(P("1/2*t1"), den)],
    ]
    for i in range(2):
        for j in range(2):
            assert A.entries[i][j].coeffs[0] == want[i][j]


def test_halphen_pullback():
    A, H = halphen_pullback()
    assert A == halphen_closed_form()
    assert H == HALPHEN
    assert H.components[1] == P("t2*t1 + t2*t3 - t1*t3")
    rep = halphen_pullback_report()
    assert rep.matches_closed_form and rep.maps_to_ramanujan


def test_alpha_map_is_symmetric():
    a = alpha_map()
    swap = {"t1": P("t2"), "t2": P("t1"), "t3": P("t3")}
    for v in ("t1", "t2", "t3"):
        assert a[v].substitute(swap) == a[v]


def test_alpha_map_spot_value():
    # s = (0, 1, 2): T = 1, t2 = -4 sum (T - s_i)(T - s_j) = 4, t3 = -4 prod (T - s_i) = 0
    pt = {"t1": 0, "t2": 1, "t3": 2}
    a = alpha_map()
    assert [a[v].evaluate(pt) for v in ("t1", "t2", "t3")] == [1, 4, 0]


def test_gamma2_sextic():
    assert gamma2_minimal_poly_check()


def test_ohyama_tangency():
    rep = ohyama_tangency_check()
    assert rep.zero_modulo_F
    assert rep.remainder_mod_F.is_zero()
    # recorded outcome: dF(V) is a nonzero multiple of F
    assert not rep.identically_zero
    assert rep.field == ohyama_field() and rep.F == ohyama_F()
