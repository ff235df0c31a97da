"""Gauss-Manin connection of y^2 = 4(x-t1)^3 - t2(x-t1) - t3 and the vector
fields derived from it in the Ramanujan and Halphen charts.

With omega_1 = dx/y, omega_2 = x dx/y the connection matrix A is defined by
nabla omega_j = sum_k A_jk omega_k.  For a basis form C dx/y,

    d/dt_i (C dx/y) = -(1/2) (C dP/dt_i) / P dx/y,

and 1/P is rewritten with Delta = -P' a1 + P a2.  The P'/P term is removed by
G P'/P dx/y = 2 G' dx/y modulo exact forms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .derham import FAMILY, CohomClass, SolveFailure, cofactors, reduce
from .numeric import zeta3
from .sympoly import (
    DELTA,
    NotExact,
    ParamFraction,
    ParamOneForm,
    ParamPoly,
    VectorFieldT,
    as_catalog_monomial,
    pair,
    solve_linear,
    t1,
    t2,
    t3,
    t4,
    total_differential,
    x,
)

__all__ = [
    "NoSolution",
    "NonUniqueSolution",
    "ConnectionMatrix",
    "basis_derivative",
    "gm_matrix",
    "gm_closed_form",
    "ramanujan_field",
    "RAMANUJAN",
    "HALPHEN",
    "alpha_map",
    "halphen_closed_form",
    "halphen_pullback",
    "halphen_pullback_report",
    "HalphenResult",
    "gamma2_minimal_poly_check",
    "OhyamaReport",
    "ohyama_field",
    "ohyama_F",
    "ohyama_tangency_check",
    "solve_field",
]

PARAMS = ("t1", "t2", "t3")


class NoSolution(SolveFailure):
    pass


class NonUniqueSolution(SolveFailure):
    pass


@dataclass(frozen=True)
class ConnectionMatrix:
    entries: tuple  # ((A11, A12), (A21, A22)) of ParamOneForm

    def __getitem__(self, jk):
        j, k = jk
        return self.entries[j][k]

    def trace(self) -> ParamOneForm:
        return self.entries[0][0] + self.entries[1][1]

    def __eq__(self, other):
        if not isinstance(other, ConnectionMatrix):
            return NotImplemented
        return all(self[j, k] == other[j, k] for j in range(2) for k in range(2))

    __hash__ = None

    def substitute(self, bindings) -> "ConnectionMatrix":
        return ConnectionMatrix(
            tuple(tuple(self[j, k].substitute(bindings) for k in range(2)) for j in range(2))
        )

    def apply(self, V: VectorFieldT):
        """2x2 matrix of fractions <A_jk, V>."""
        return [[pair(self[j, k], V) for k in range(2)] for j in range(2)]

    def __str__(self):
        return "\n".join(f"A{j + 1}{k + 1} = {self[j, k]}" for j in range(2) for k in range(2))


def basis_derivative(j: int, i: int) -> CohomClass:
    """d/dt_i of the basis form omega_j (j = 0: dx/y, j = 1: x dx/y)."""
    a1, a2 = cofactors()
    C = ParamPoly.const(1) if j == 0 else x
    H = C * FAMILY.P.diff(PARAMS[i])
    G = H * a2 - 2 * (H * a1).diff("x")
    cls = reduce(G)
    return cls.scale(ParamFraction(ParamPoly.const(Fraction(-1, 2)), {"Delta": 1}))


@lru_cache(maxsize=None)
def gm_matrix() -> ConnectionMatrix:
    entries = []
    for j in range(2):
        derivs = [basis_derivative(j, i) for i in range(3)]
        row = (
            ParamOneForm([d.alpha.reduced() for d in derivs]),
            ParamOneForm([d.beta.reduced() for d in derivs]),
        )
        entries.append(row)
    return ConnectionMatrix(tuple(entries))


def gm_closed_form() -> ConnectionMatrix:
    """The closed form of A in terms of alpha = 3 t3 dt2 - 2 t2 dt3 and d(Delta)."""
    alpha = ParamOneForm([0, 3 * t3, -2 * t2])
    dD = total_differential(DELTA)
    dt1 = ParamOneForm.dt(1)
    h = Fraction(3, 2)
    inv = ParamFraction(ParamPoly.const(1), {"Delta": 1})
    A11 = (alpha * (-h * t1) - dD * Fraction(1, 12)) * inv
    A12 = alpha * h * inv
    A21 = (dt1 * DELTA - dD * (t1 / 6) - alpha * (h * t1**2 + t2 / 8)) * inv
    A22 = (alpha * (h * t1) + dD * Fraction(1, 12)) * inv
    return ConnectionMatrix(((A11, A12), (A21, A22)))


def _to_frac(c) -> ParamFraction:
    return c if isinstance(c, ParamFraction) else ParamFraction(c)


def _det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    total = ParamPoly()
    for c in range(n):
        minor = [row[:c] + row[c + 1 :] for row in m[1:]]
        term = m[0][c] * _det(minor)
        total = total + term if c % 2 == 0 else total - term
    return total


def _quotient(num: ParamPoly, den: ParamPoly):
    try:
        return num.divexact(den)
    except NotExact:
        c, exps = as_catalog_monomial(den)
        return ParamFraction(num / c, exps).reduced()


def solve_field(rows, rhs) -> VectorFieldT:
    """Cramer solve of sum_i rows[e][i] R_i = rhs[e] over fractions (square systems)."""
    n = len(rows)
    prows = []
    for row, b in zip(rows, rhs):
        row = [_to_frac(c) for c in row]
        b = _to_frac(b)
        den = {}
        for c in row + [b]:
            for k, v in c.den.items():
                den[k] = max(den.get(k, 0), v)
        prows.append([c._lift(den) for c in row] + [b._lift(den)])
    M = [r[:n] for r in prows]
    D = _det(M)
    if D.is_zero():
        raise NonUniqueSolution("singular system for the vector field")
    comps = []
    for i in range(n):
        Mi = [r[:i] + [r[n]] + r[i + 1 : n] for r in prows]
        comps.append(_quotient(_det(Mi), D))
    return VectorFieldT(comps)


def _field_conditions(A: ConnectionMatrix):
    """nabla_R omega_1 = -omega_2, nabla_R omega_2 = 0, as linear equations in R.

    A22 = -A11, so the fourth condition duplicates the first.
    """
    rows, rhs = [], []
    for (j, k), target in (((0, 0), 0), ((0, 1), -1), ((1, 0), 0)):
        rows.append(list(A[j, k].coeffs[:3]))
        rhs.append(target)
    return rows, rhs


@lru_cache(maxsize=None)
def ramanujan_field() -> VectorFieldT:
    A = gm_matrix()
    rows, rhs = _field_conditions(A)
    R = solve_field(rows, rhs)
    for c in R:
        if isinstance(c, ParamFraction) and not c.is_polynomial():
            raise NoSolution("Ramanujan field is not polynomial")
    R = VectorFieldT(c.as_poly() if isinstance(c, ParamFraction) else c for c in R)
    # the fourth condition
    if not pair(A[1, 1], R).is_zero():
        raise NoSolution("nabla_R(x dx/y) does not vanish")
    return R


RAMANUJAN = VectorFieldT(
    (t1**2 - t2 / 12, 4 * t1 * t2 - 6 * t3, 6 * t1 * t3 - t2**2 / 3)
)
HALPHEN = VectorFieldT(
    (
        t1 * (t2 + t3) - t2 * t3,
        t2 * (t1 + t3) - t1 * t3,
        t3 * (t1 + t2) - t1 * t2,
    )
)


def alpha_map() -> dict[str, ParamPoly]:
    """Halphen chart -> Ramanujan chart, so that E_R(alpha(t)) is y^2 = 4 prod(x - t_i)."""
    T = (t1 + t2 + t3) / 3
    d = [T - t1, T - t2, T - t3]
    return {
        "t1": T,
        "t2": -4 * (d[0] * d[1] + d[0] * d[2] + d[1] * d[2]),
        "t3": -4 * d[0] * d[1] * d[2],
    }


def halphen_closed_form() -> ConnectionMatrix:
    ts = (t1, t2, t3)
    names = ("t1-t2", "t2-t3", "t1-t3")
    acc = [[ParamOneForm([]) for _ in range(2)] for _ in range(2)]
    for i in range(3):
        j, k = [m for m in range(3) if m != i]
        # 1 / (2 (t_i - t_j)(t_i - t_k)) written over the catalog factors
        sign = 1
        den = {}
        for m in (j, k):
            a, b = min(i, m), max(i, m)
            den[f"t{a + 1}-t{b + 1}"] = 1
            if i > m:
                sign = -sign
        assert all(n in names for n in den)
        scale = ParamFraction(ParamPoly.const(Fraction(sign, 2)), den)
        dti = ParamOneForm.dt(i + 1) * scale
        ti, tj, tk = ts[i], ts[j], ts[k]
        block = ((-ti, 1), (tj * tk - ti * (tj + tk), ti))
        for r in range(2):
            for c in range(2):
                acc[r][c] = acc[r][c] + dti * block[r][c]
    return ConnectionMatrix(tuple(tuple(row) for row in acc))


@dataclass
class HalphenResult:
    matrix: ConnectionMatrix
    field: VectorFieldT
    matches_closed_form: bool
    maps_to_ramanujan: bool


def halphen_pullback() -> tuple[ConnectionMatrix, VectorFieldT]:
    res = halphen_pullback_report()
    if not res.matches_closed_form:
        raise SolveFailure("pullback of A differs from the Halphen closed form")
    if res.field != HALPHEN:
        raise SolveFailure("Halphen field mismatch")
    return res.matrix, res.field


@lru_cache(maxsize=None)
def halphen_pullback_report() -> HalphenResult:
    A = gm_matrix().substitute(alpha_map())
    rows, rhs = _field_conditions(A)
    H = solve_field(rows, rhs)
    H = VectorFieldT(c.as_poly() if isinstance(c, ParamFraction) else c for c in H)
    return HalphenResult(
        matrix=A,
        field=H,
        matches_closed_form=(A == halphen_closed_form()),
        maps_to_ramanujan=_pushforward_check(H),
    )


def _pushforward_check(H: VectorFieldT) -> bool:
    """d alpha(H) = R o alpha, componentwise."""
    amap = alpha_map()
    for name, R_i in zip(PARAMS, RAMANUJAN):
        if H.apply(amap[name]) != ParamFraction(R_i.substitute(amap)):
            return False
    return True


def gamma2_minimal_poly_check() -> bool:
    """Each t_i is a root of (X - a1)^3 - (1/4) a2 (X - a1) - (1/4) a3 with a = alpha(t)."""
    amap = alpha_map()
    ok = True
    for s in (t1, t2, t3):
        X = s - amap["t1"]
        cubic = X**3 - amap["t2"] * X / 4 - amap["t3"] / 4
        ok = ok and cubic.is_zero()
    return ok


# -- Ohyama

_INCIDENCE = ((0, 1, 2), (0, 2, 3), (0, 1, 3), (1, 2, 3))


def ohyama_F() -> ParamPoly:
    z = zeta3()
    return (
        (t2 * t4 + t3 * t1) * (z * z)
        + (t2 * t1 + t3 * t4) * z
        + (t2 * t3 + t4 * t1)
    )


def ohyama_field() -> VectorFieldT:
    ts = (t1, t2, t3, t4)
    matrix = [[Fraction(1 if i in row else 0) for i in range(4)] for row in _INCIDENCE]
    rhs = []
    for a, b, c in _INCIDENCE:
        rhs.append(ts[a] * ts[b] + ts[b] * ts[c] + ts[c] * ts[a])
    # invert the incidence matrix column by column
    inv_cols = [solve_linear(matrix, [Fraction(int(i == j)) for i in range(4)]) for j in range(4)]
    comps = []
    for i in range(4):
        comps.append(sum((rhs[j] * inv_cols[j][i] for j in range(4)), ParamPoly()))
    return VectorFieldT(comps)


@dataclass
class OhyamaReport:
    field: VectorFieldT
    F: ParamPoly
    dF_V: ParamPoly
    remainder_mod_F: ParamPoly
    identically_zero: bool
    zero_modulo_F: bool
    notes: list = field(default_factory=list)

    def __str__(self):
        if self.identically_zero:
            status = "dF(V) vanishes identically"
        elif self.zero_modulo_F:
            status = "dF(V) vanishes modulo F only"
        else:
            status = "dF(V) does not vanish modulo F"
        return status


def ohyama_tangency_check() -> OhyamaReport:
    V = ohyama_field()
    F = ohyama_F()
    dFV = sum((F.diff(f"t{i + 1}") * V[i] for i in range(4)), ParamPoly())
    quo, rem = dFV.divmod(F)
    return OhyamaReport(
        field=V,
        F=F,
        dF_V=dFV,
        remainder_mod_F=rem,
        identically_zero=dFV.is_zero(),
        zero_modulo_F=rem.is_zero(),
        notes=[f"dF(V) = ({quo}) * F + ({rem})"],
    )
