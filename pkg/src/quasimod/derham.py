"""Reduction of forms C(x) dx/y on y^2 = P(x) = 4(x-t1)^3 - t2(x-t1) - t3 to the
basis {dx/y, x dx/y}.

Modulo exact forms,

    d(x^a y) = ((1/2) P' x^a + a x^(a-1) P) dx/y,

whose x-degree is a+2 with leading coefficient 6 + 4a.  Subtracting these
generators lowers deg_x C until it is at most 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .sympoly import DELTA, ParamFraction, ParamPoly, t1, t2, t3, x

__all__ = [
    "SolveFailure",
    "CohomClass",
    "CurveFamily",
    "FAMILY",
    "exact_generator",
    "reduce",
    "cofactors",
]


class SolveFailure(ArithmeticError):
    pass


@dataclass(frozen=True)
class CohomClass:
    """alpha * dx/y + beta * x dx/y."""

    alpha: ParamFraction
    beta: ParamFraction

    def __add__(self, other: "CohomClass") -> "CohomClass":
        return CohomClass(self.alpha + other.alpha, self.beta + other.beta)

    def __sub__(self, other: "CohomClass") -> "CohomClass":
        return CohomClass(self.alpha - other.alpha, self.beta - other.beta)

    def scale(self, f) -> "CohomClass":
        return CohomClass(self.alpha * f, self.beta * f)

    def __eq__(self, other):
        if not isinstance(other, CohomClass):
            return NotImplemented
        return self.alpha == other.alpha and self.beta == other.beta

    __hash__ = None

    def is_zero(self) -> bool:
        return self.alpha.is_zero() and self.beta.is_zero()

    def __str__(self):
        return f"alpha = {self.alpha}\nbeta = {self.beta}"


@dataclass(frozen=True)
class CurveFamily:
    P: ParamPoly
    Delta: ParamPoly

    @property
    def dP(self) -> ParamPoly:
        return self.P.diff("x")


FAMILY = CurveFamily(
    P=4 * (x - t1) ** 3 - t2 * (x - t1) - t3,
    Delta=DELTA,
)


def exact_generator(a: int) -> ParamPoly:
    """Coefficient of dx/y in d(x^a y)."""
    P = FAMILY.P
    g = FAMILY.dP * x**a / 2
    if a:
        g = g + a * x ** (a - 1) * P
    return g


def _reduce_poly(C: ParamPoly) -> tuple[ParamPoly, ParamPoly]:
    while True:
        n = C.degree("x")
        if n < 2:
            return C.coeff_in("x", 0), C.coeff_in("x", 1)
        a = n - 2
        lead = C.coeff_in("x", n)
        C = C - lead * exact_generator(a) / (6 + 4 * a)
        if C.degree("x") >= n:
            raise AssertionError("reduction step did not lower the degree")


def reduce(C) -> CohomClass:
    """Class of C dx/y; C is a ParamPoly (or ParamFraction) polynomial in x."""
    if isinstance(C, ParamFraction):
        alpha, beta = _reduce_poly(C.num)
        return CohomClass(ParamFraction(alpha, C.den), ParamFraction(beta, C.den))
    if not isinstance(C, ParamPoly):
        C = ParamPoly.const(C)
    alpha, beta = _reduce_poly(C)
    return CohomClass(ParamFraction(alpha), ParamFraction(beta))


def _solve_rectangular(rows, rhs):
    """Exact solution of a consistent system with a unique solution; rows may outnumber unknowns."""
    n = len(rows[0])
    a = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(a)) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][col]
        a[r] = [v / p for v in a[r]]
        for i in range(len(a)):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                a[i] = [v - f * w for v, w in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
    if any(row[n] != 0 for row in a[r:]):
        raise SolveFailure("inconsistent linear system")
    if len(pivots) < n:
        raise SolveFailure("linear system has a non-trivial kernel")
    sol = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        sol[col] = a[i][n]
    return sol


@lru_cache(maxsize=None)
def cofactors() -> tuple[ParamPoly, ParamPoly]:
    """(a1, a2) with Delta = -P' a1 + P a2, deg_x a1 <= 4, deg_x a2 <= 3.

    Solved in X = x - t1 with a weighted-homogeneous ansatz (wt X = 2) and no
    X*t3 term in a1; this fixes the one-parameter family of solutions.
    """
    X = x
    P = 4 * X**3 - t2 * X - t3
    dP = P.diff("x")
    mon1 = [X**4, X**2 * t2, t2**2]
    mon2 = [X**3, X * t2, t3]
    cols = [-dP * m for m in mon1] + [P * m for m in mon2]
    keys = sorted(
        set().union(*(c.terms for c in cols), DELTA.terms),
    )
    rows = [[c.terms.get(k, Fraction(0)) for c in cols] for k in keys]
    rhs = [DELTA.terms.get(k, Fraction(0)) for k in keys]
    sol = _solve_rectangular(rows, rhs)
    a1 = sum((c * m for c, m in zip(sol[:3], mon1)), ParamPoly())
    a2 = sum((c * m for c, m in zip(sol[3:], mon2)), ParamPoly())
    shift = {"x": x - t1}
    a1, a2 = a1.substitute(shift), a2.substitute(shift)
    if -FAMILY.dP * a1 + FAMILY.P * a2 != DELTA:
        raise SolveFailure("cofactor identity does not hold")
    return a1, a2
