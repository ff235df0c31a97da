"""Theta constants and the Dedekind eta function, with the identities they
satisfy checked as exact series.

Derivatives in z (q = e^(2 pi i z)) are replaced by D = q d/dq; a weight-k
expression then loses the factor (2 pi i)^k, which is absorbed into the
rational normalizations below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .eisenstein import eisenstein_E
from .numeric import CycloNumber, zeta3
from .qseries import PuiseuxSeries

__all__ = [
    "theta_constant",
    "dedekind_eta",
    "eta_product",
    "halphen_solution",
    "halphen_residuals",
    "darboux_residual",
    "theta_eisenstein_identities",
    "IdentityReport",
    "delta_product_check",
    "delta_series",
    "ohyama_eta_series",
    "OhyamaSeriesReport",
]


def theta_constant(which: int, N) -> PuiseuxSeries:
    """theta_2 = sum q^((n+1/2)^2/2), theta_3 = sum q^(n^2/2), theta_4 = sum (-1)^n q^(n^2/2),
    known modulo q^N."""
    N = Fraction(N)
    if N < 1:
        raise ValueError("order must be at least 1")
    if which == 2:
        d = 8
        size = int(math.ceil(N * d))
        cs = [0] * size
        n = 0
        while (2 * n + 1) ** 2 < size:
            cs[(2 * n + 1) ** 2] += 2  # n and -n-1
            n += 1
    elif which in (3, 4):
        d = 2
        size = int(math.ceil(N * d))
        cs = [0] * size
        cs[0] = 1
        n = 1
        while n * n < size:
            cs[n * n] += 2 if (which == 3 or n % 2 == 0) else -2
            n += 1
    else:
        raise ValueError("which must be 2, 3 or 4")
    return PuiseuxSeries(cs, d=d, N=size - 1)


def eta_product(N: int, power: int = 1) -> PuiseuxSeries:
    """prod_{n>=1} (1 - q^n)^power modulo q^(N+1), by the log-sum exponential."""
    if N < 0:
        raise ValueError("order must be nonnegative")
    # log prod (1 - q^n) = -sum sigma_1(m) q^m / m
    from .eisenstein import divisor_sigma

    log = [Fraction(0)] + [Fraction(-power * divisor_sigma(1, m), m) for m in range(1, N + 1)]
    return PuiseuxSeries(log, N=N).exp()


def dedekind_eta(N: int) -> PuiseuxSeries:
    """q^(1/24) prod (1 - q^n) on the lattice (1/24)Z, known modulo q^(N+1)."""
    p = eta_product(N)
    return p.subs_monomial(1).on_lattice(24) * PuiseuxSeries.monomial(1, Fraction(1, 24), N + 2)


def _log_derivative(s: PuiseuxSeries) -> PuiseuxSeries:
    return s.log_derivative().simplify_lattice()


def halphen_solution(N: int):
    """(u1, u2, u3) = 2 D log of (theta_4, theta_2, theta_3), modulo q^N.

    theta_3 and theta_4 contribute half-integral exponents, so the triple lives
    on the lattice (1/2)Z.
    """
    if N < 2:
        raise ValueError("order must be at least 2")
    us = []
    for which in (4, 2, 3):
        u = _log_derivative(theta_constant(which, N + 1)).scale(2)
        us.append(u.on_lattice(2).truncate(N))
    return tuple(us)


def halphen_residuals(us):
    """D u_i - (u_i (u_j + u_k) - u_j u_k) for the three cyclic positions."""
    u1, u2, u3 = us
    out = []
    for a, b, c in ((u1, u2, u3), (u2, u1, u3), (u3, u1, u2)):
        out.append(a.derive() - (a * (b + c) - b * c))
    return tuple(out)


def darboux_residual(us):
    """D(u1 + u2) - 2 u1 u2."""
    u1, u2, _ = us
    return (u1 + u2).derive() - (u1 * u2).scale(2)


@dataclass
class IdentityReport:
    name: str
    holds: bool
    order: Fraction
    first_difference: tuple | None = None

    def __str__(self):
        if self.holds:
            return f"{self.name}: holds modulo q^{self.order}"
        e, a, b = self.first_difference
        return f"{self.name}: differs at q^{e}: {a} vs {b}"


def _compare(name, lhs: PuiseuxSeries, rhs: PuiseuxSeries) -> IdentityReport:
    diff = lhs.first_difference(rhs)
    return IdentityReport(name, diff is None, min(lhs.prec, rhs.prec), diff)


def theta_eisenstein_identities(N: int) -> list[IdentityReport]:
    """Three identities, with l_i = D log theta_i (i = 2, 3, 4) and
    L_i = (l_2 + l_3 + l_4)/3 - l_i:

        (2/3) (l_2 + l_3 + l_4) = E2/12
        -16 (L_2 L_3 + L_2 L_4 + L_3 L_4) = E4/12
        -32 L_2 L_3 L_4 = E6/216

    The right-hand sides are (E2, E4, E6) scaled to (t1, t2, t3) of the
    Ramanujan system; the L_i are the roots of the alpha-preimage in the
    Halphen chart.
    """
    if N < 4:
        raise ValueError("order must be at least 4")
    ls = [_log_derivative(theta_constant(w, N + 1)).truncate(N) for w in (2, 3, 4)]
    s = ls[0] + ls[1] + ls[2]
    Ls = [s.scale(Fraction(1, 3)) - li for li in ls]
    e2 = eisenstein_E(2, N).truncate(N)
    e4 = eisenstein_E(4, N).truncate(N)
    e6 = eisenstein_E(6, N).truncate(N)
    sym2 = Ls[0] * Ls[1] + Ls[0] * Ls[2] + Ls[1] * Ls[2]
    prod3 = Ls[0] * Ls[1] * Ls[2]
    return [
        _compare("(2/3) D log(theta2 theta3 theta4) = E2/12", s.scale(Fraction(2, 3)), e2.scale(Fraction(1, 12))),
        _compare("-16 sum L_i L_j = E4/12", sym2.scale(-16), e4.scale(Fraction(1, 12))),
        _compare("-32 L_1 L_2 L_3 = E6/216", prod3.scale(-32), e6.scale(Fraction(1, 216))),
    ]


def delta_series(N: int) -> PuiseuxSeries:
    """(E4^3 - E6^2)/1728 modulo q^(N+1)."""
    e4 = eisenstein_E(4, N)
    e6 = eisenstein_E(6, N)
    return (e4 * e4 * e4 - e6 * e6).scale(Fraction(1, 1728))


def delta_product_check(N: int) -> IdentityReport:
    if N < 1:
        raise ValueError("order must be at least 1")
    lhs = delta_series(N)
    rhs = eta_product(N - 1, 24) * PuiseuxSeries.monomial(1, 1, N + 1)
    return _compare("(E4^3 - E6^2)/1728 = q prod (1 - q^n)^24", lhs, rhs)


@dataclass
class OhyamaSeriesReport:
    series: tuple
    residuals: list
    F_residual: PuiseuxSeries
    holds: bool
    notes: list = field(default_factory=list)


def ohyama_eta_series(N: int) -> OhyamaSeriesReport:
    """Normalized (W, X, Y, Z) built from e(q) = D log eta = E2/24 and the four
    sum equations plus F = 0, modulo q^N.

    For eta(a z + b) the normalized log derivative is a * e(zeta * q^a) with
    zeta = e^(2 pi i b); constant factors of eta drop out of log derivatives.
    """
    if N < 1:
        raise ValueError("order must be at least 1")
    z = zeta3()
    M = 3 * N + 3
    e = eisenstein_E(2, M).scale(Fraction(1, 24))
    ez = PuiseuxSeries([CycloNumber(3, (c,)) for c in e.coeffs], N=e.N)
    third = Fraction(1, 3)

    def scaled(scale):
        return ez.subs_monomial(third, scale=scale).scale(third)

    base = ez
    W = scaled(None).scale(3) - base
    X = ez.subs_monomial(3).scale(9) - base
    Y = scaled(z * z).scale(3) - base
    Zs = scaled(z).scale(3) - base
    ts = [s.on_lattice(3).truncate(N) for s in (W, X, Y, Zs)]
    t1, t2, t3, t4 = ts
    eqs = [
        (t1 + t2 + t3).derive() - (t1 * t2 + t2 * t3 + t3 * t1),
        (t1 + t3 + t4).derive() - (t1 * t3 + t3 * t4 + t4 * t1),
        (t1 + t2 + t4).derive() - (t1 * t2 + t2 * t4 + t4 * t1),
        (t2 + t3 + t4).derive() - (t2 * t3 + t3 * t4 + t4 * t2),
    ]
    F = (t2 * t4 + t3 * t1).scale(z * z) + (t2 * t1 + t3 * t4).scale(z) + (t2 * t3 + t4 * t1)
    holds = all(r.is_zero() for r in eqs) and F.is_zero()
    return OhyamaSeriesReport(tuple(ts), eqs, F, holds)

