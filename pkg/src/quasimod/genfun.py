"""Generating functions built from E2, E4, E6 and the level 11 eta product."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .eisenstein import divisor_sigma, eisenstein_E
from .qseries import PuiseuxSeries
from .theta import delta_series, eta_product

__all__ = [
    "j_function",
    "tau",
    "tau_eta",
    "dijkgraaf_F",
    "dijkgraaf_counts",
    "F1_check",
    "yau_zaslow",
    "bryan_leung",
    "BryanLeungReport",
    "modularity_eta_product",
]


def j_function(N: int) -> PuiseuxSeries:
    """j = 1728 E4^3/(E4^3 - E6^2), known modulo q^(N+1)."""
    if N < 0:
        raise ValueError("order must be nonnegative")
    M = N + 2  # dividing by a series of valuation 1 costs two orders
    e4 = eisenstein_E(4, M)
    e6 = eisenstein_E(6, M)
    e43 = e4 * e4 * e4
    return (e43.scale(1728) / (e43 - e6 * e6)).truncate(N + 1)


def tau(N: int) -> list[int]:
    """[tau(1), ..., tau(N)] from (E4^3 - E6^2)/1728."""
    if N < 1:
        raise ValueError("order must be at least 1")
    d = delta_series(N)
    return [int(d.coeff(n)) for n in range(1, N + 1)]


def tau_eta(N: int) -> list[int]:
    """[tau(1), ..., tau(N)] from q prod (1 - q^n)^24."""
    p = eta_product(N - 1, 24)
    return [int(p.coeff(n)) for n in range(0, N)]


def dijkgraaf_F(g: int, N: int) -> PuiseuxSeries:
    """F_2 = (10 E2^3 - 6 E2 E4 - 4 E6)/103680 and
    F_3 = (-6 E2^6 + 15 E2^4 E4 - 12 E2^2 E4^2 + 7 E4^3 + 4 E2^3 E6 - 12 E2 E4 E6 + 4 E6^2)/35831808."""
    e2, e4, e6 = (eisenstein_E(w, N) for w in (2, 4, 6))
    if g == 2:
        s = e2 * e2 * e2 * 10 - e2 * e4 * 6 - e6 * 4
        return s.scale(Fraction(1, 103680))
    if g == 3:
        e22 = e2 * e2
        s = (
            e22 * e22 * e22 * -6
            + e22 * e22 * e4 * 15
            - e22 * e4 * e4 * 12
            + e4 * e4 * e4 * 7
            + e22 * e2 * e6 * 4
            - e2 * e4 * e6 * 12
            + e6 * e6 * 4
        )
        return s.scale(Fraction(1, 35831808))
    raise ValueError("g must be 2 or 3")


def dijkgraaf_counts(g: int, N: int) -> list[Fraction]:
    """[N_{g,0}, ..., N_{g,N}]: the coefficients of F_g."""
    F = dijkgraaf_F(g, N)
    return [F.coeff(d) for d in range(0, N + 1)]


def F1_check(N: int) -> bool:
    """The positive part of -E2/24 is sum_d sigma_1(d) q^d, and its constant term is -1/24."""
    s = eisenstein_E(2, N).scale(Fraction(-1, 24))
    if s.coeff(0) != Fraction(-1, 24):
        return False
    return all(s.coeff(d) == divisor_sigma(1, d) for d in range(1, N + 1))


def yau_zaslow(N: int) -> PuiseuxSeries:
    """sum N_n(0) q^n = q / Delta(q) shifted by q^-1, i.e. 1728 q/(E4^3 - E6^2) modulo q^(N+1)."""
    d = delta_series(N + 1)
    return (PuiseuxSeries.monomial(1, 1, N + 2) / d).truncate(N + 1)


@dataclass
class BryanLeungReport:
    g: int
    series: PuiseuxSeries
    notes: list = field(default_factory=list)


def bryan_leung(g: int, N: int) -> BryanLeungReport:
    """(-(1/24) D E2)^g * 1728 q/(E4^3 - E6^2) with D = q d/dq, divided by q^g."""
    if g < 0:
        raise ValueError("g must be nonnegative")
    # -(1/24) D E2 = sum n sigma_1(n) q^n = q (1 + ...)
    k = [Fraction(0)] + [Fraction(n * divisor_sigma(1, n)) for n in range(1, N + 2)]
    base = PuiseuxSeries(k[1:], N=N)  # divided by q
    s = yau_zaslow(N)
    for _ in range(g):
        s = s * base
    notes = [
        "derivative read as q d/dq; result divided by q^g",
    ]
    return BryanLeungReport(g, s.truncate(N + 1), notes)


def modularity_eta_product(N: int) -> PuiseuxSeries:
    """eta(q)^2 eta(q^11)^2 = q prod (1 - q^n)^2 (1 - q^(11 n))^2 modulo q^(N+1)."""
    if N < 1:
        raise ValueError("order must be at least 1")
    a = eta_product(N - 1, 2)
    b = eta_product((N - 1) // 11, 2).subs_monomial(11).truncate(N)
    return PuiseuxSeries.monomial(1, 1, N + 1) * a * b
