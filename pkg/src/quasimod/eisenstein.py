"""q-expansions of the Eisenstein series from the Ramanujan system or from divisor
sums, plus the quasi-modular ring Q[t1, t2, t3] with its derivation and group
action.

The Ramanujan system

    t1' = t1^2 - t2/12,  t2' = 4 t1 t2 - 6 t3,  t3' = 6 t1 t3 - t2^2/3

with ' = 12 b q d/dq is solved by t = sum t_n q^n, t_0 = (b, 12 b^2, 8 b^3).
At order n the unknown t_n enters linearly through the Jacobian M at t_0:

    (12 n b I - M) t_n = (quadratic terms in t_1 .. t_{n-1}).

n = 1 is the resonant step; t_1 spans the kernel of 12 b I - M and is fixed
up to the scale c of q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .qseries import PuiseuxSeries
from .sympoly import ParamPoly, solve_linear, t1, t2, t3, weight_grading
from .gaussmanin import RAMANUJAN

__all__ = [
    "EISENSTEIN_B",
    "RamanujanState",
    "solve_ramanujan",
    "divisor_sigma",
    "eisenstein_divisor",
    "eisenstein_E",
    "QuasiModularPoly",
    "ring_derivation",
    "ZeroScale",
    "group_action",
    "group_mul",
    "act_formula",
    "ga_components",
    "act_on_poly",
    "ramanujan_residual",
]

EISENSTEIN_B = {1: -24, 2: 240, 3: -504}


class ZeroScale(ZeroDivisionError):
    pass


@dataclass(frozen=True)
class RamanujanState:
    """Normalization of the recursion; b = 1/12 makes the derivation q d/dq."""

    b: Fraction = Fraction(1, 12)
    c: Fraction = Fraction(1)

    @property
    def t0(self):
        b = self.b
        return (b, 12 * b**2, 8 * b**3)

    @property
    def M(self):
        b = self.b
        return [
            [2 * b, Fraction(-1, 12), Fraction(0)],
            [48 * b**2, 4 * b, Fraction(-6)],
            [48 * b**3, -8 * b**2, 6 * b],
        ]

    @property
    def first_order(self):
        b, c = self.b, self.c
        return (c * -24 * b, c * 240 * 12 * b**2, c * -504 * 8 * b**3)


def _quadratic_rhs(t, n):
    """Part of R(t) at q^n not involving t_n or t_0 * t_n."""

    def conv(a, b):
        return sum((a[k] * b[n - k] for k in range(1, n)), Fraction(0))

    a, b, c = t
    return (
        conv(a, a),
        4 * conv(a, b),
        6 * conv(a, c) - conv(b, b) / 3,
    )


def solve_ramanujan(N: int, state: RamanujanState | None = None):
    """Series t1, t2, t3 solving the Ramanujan system modulo q^(N+1)."""
    if N < 1:
        raise ValueError("order must be at least 1")
    st = state or RamanujanState()
    b = st.b
    t = [[v] for v in st.t0]
    for i, v in enumerate(st.first_order):
        t[i].append(v)
    M = st.M
    for n in range(2, N + 1):
        A = [[(12 * n * b if i == j else 0) - M[i][j] for j in range(3)] for i in range(3)]
        rhs = list(_quadratic_rhs(t, n))
        sol = solve_linear(A, rhs)
        for i in range(3):
            t[i].append(sol[i])
    return tuple(PuiseuxSeries(cs, N=N) for cs in t)


def ramanujan_residual(ts, b=Fraction(1, 12)):
    """12 b D t - R(t) for a triple of series; zero iff they solve the system."""
    a, bb, c = ts
    R = (a * a - bb / 12, 4 * a * bb - 6 * c, 6 * a * c - bb * bb / 3)
    return tuple(s.derive().scale(12 * b) - r for s, r in zip(ts, R))


def divisor_sigma(k: int, n: int) -> int:
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d**k
            e = n // d
            if e != d:
                total += e**k
        d += 1
    return total


def eisenstein_divisor(k: int, N: int) -> PuiseuxSeries:
    """E_{2k} = 1 + b_k sum sigma_{2k-1}(n) q^n modulo q^(N+1), k in {1, 2, 3}."""
    if k not in EISENSTEIN_B:
        raise ValueError("k must be 1, 2 or 3")
    if N < 0:
        raise ValueError("order must be nonnegative")
    bk = EISENSTEIN_B[k]
    cs = [1] + [bk * divisor_sigma(2 * k - 1, n) for n in range(1, N + 1)]
    return PuiseuxSeries(cs, N=N)


def eisenstein_E(weight: int, N: int) -> PuiseuxSeries:
    """E_2, E_4 or E_6 by divisor sums."""
    return eisenstein_divisor(weight // 2, N)


@dataclass(frozen=True)
class QuasiModularPoly:
    p: ParamPoly
    weight: int
    diff_order: int

    @classmethod
    def of(cls, p: ParamPoly) -> "QuasiModularPoly":
        ws = weight_grading(p)
        if len(ws) > 1:
            raise ValueError(f"{p} is not homogeneous (weights {sorted(ws)})")
        w = ws.pop() if ws else 0
        return cls(p, w, max(p.degree("t1"), 0))

    def __str__(self):
        return str(self.p)


def ring_derivation(f) -> QuasiModularPoly:
    """f -> df(R) with R the Ramanujan field."""
    p = f.p if isinstance(f, QuasiModularPoly) else f
    out = sum((p.diff(v) * r for v, r in zip(("t1", "t2", "t3"), RAMANUJAN)), ParamPoly())
    if isinstance(f, QuasiModularPoly):
        if out.is_zero():
            return QuasiModularPoly(out, f.weight + 2, 0)
        return QuasiModularPoly(out, f.weight + 2, max(out.degree("t1"), 0))
    return QuasiModularPoly.of(out) if not out.is_zero() else QuasiModularPoly(out, 0, 0)


def group_action(t, k, kp):
    """t . g for g = [[k, k'], [0, 1/k]]: (t1 k^-2 + k' k^-1, t2 k^-4, t3 k^-6)."""
    if k == 0:
        raise ZeroScale("k must be nonzero")
    k = Fraction(k) if isinstance(k, int) else k
    return (t[0] / k**2 + kp / k, t[1] / k**4, t[2] / k**6)


def group_mul(g1, g2):
    """Product of (k, k') pairs in the upper triangular group."""
    k1, p1 = g1
    k2, p2 = g2
    return (k1 * k2, k1 * p2 + p1 / k2)


def ga_components(p: ParamPoly) -> list[ParamPoly]:
    """f_i with f(t1 + k', t2, t3) = sum binom(n, i) k'^i f_i, n = deg_t1 f."""
    n = max(p.degree("t1"), 0)
    out = []
    d = p
    for i in range(n + 1):
        out.append(d * Fraction(factorial(n - i), factorial(n)))
        d = d.diff("t1")
    return out


def act_on_poly(p: ParamPoly, k, kp) -> ParamPoly:
    """p(t . g) as a polynomial in t."""
    k = Fraction(k)
    kp = Fraction(kp)
    return p.substitute({"t1": t1 / k**2 + kp / k, "t2": t2 / k**4, "t3": t3 / k**6})


def act_formula(p: ParamPoly, k, kp) -> ParamPoly:
    """k^-m sum binom(n, i) k'^i k^i f_i for homogeneous p of weight m."""
    q = QuasiModularPoly.of(p)
    k = Fraction(k)
    kp = Fraction(kp)
    fs = ga_components(p)
    n = len(fs) - 1
    total = sum((f * (comb(n, i) * kp**i * k**i) for i, f in enumerate(fs)), ParamPoly())
    return total / k**q.weight

