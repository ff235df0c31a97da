"""Point counts of elliptic curves over prime fields and the averages

    sigma_k(p) = - sum_{E / F_p} U_k(a_p(E), p) / #Aut(E),

where U_k(a, p) = (alpha^(k+1) - conj(alpha)^(k+1))/(alpha - conj(alpha)) for the
Frobenius eigenvalues alpha, conj(alpha) of E.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "NotPrime",
    "PrimeTooSmall",
    "AffineCurveModP",
    "parse_curve",
    "is_prime",
    "count_points",
    "chebyshev_U",
    "sigma_k",
    "aut_order",
    "isomorphism_classes",
    "sigma_k_by_classes",
]


class NotPrime(ValueError):
    pass


class PrimeTooSmall(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


@dataclass(frozen=True)
class AffineCurveModP:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6."""

    a1: int = 0
    a2: int = 0
    a3: int = 0
    a4: int = 0
    a6: int = 0

    @classmethod
    def short(cls, a: int, b: int) -> "AffineCurveModP":
        return cls(0, 0, 0, a, b)

    def discriminant(self) -> int:
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def equation(self, x: int, y: int) -> int:
        return (
            y * y + self.a1 * x * y + self.a3 * y
            - (x**3 + self.a2 * x * x + self.a4 * x + self.a6)
        )


def parse_curve(text: str) -> AffineCurveModP:
    """Parse a Weierstrass equation such as ``y^2+y=x^3-x^2``."""
    import sympy

    x, y = sympy.symbols("x y")
    if "=" in text:
        lhs, rhs = text.split("=", 1)
    else:
        lhs, rhs = text, "0"
    loc = {"x": x, "y": y}
    expr = sympy.expand(
        sympy.sympify(lhs.replace("^", "**"), locals=loc) - sympy.sympify(rhs.replace("^", "**"), locals=loc)
    )
    poly = sympy.Poly(expr, x, y)
    c = {m: int(v) for m, v in poly.terms()}
    if c.get((0, 2)) != 1 or c.get((3, 0)) != -1:
        raise ValueError("expected y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6")
    allowed = {(0, 2), (3, 0), (1, 1), (0, 1), (2, 0), (1, 0), (0, 0)}
    if set(c) - allowed:
        raise ValueError("not in long Weierstrass form")
    return AffineCurveModP(
        a1=c.get((1, 1), 0),
        a2=-c.get((2, 0), 0),
        a3=c.get((0, 1), 0),
        a4=-c.get((1, 0), 0),
        a6=-c.get((0, 0), 0),
    )


def count_points(curve: AffineCurveModP, p: int) -> tuple[int, int]:
    """(N_p, a_p) with N_p the number of affine solutions mod p and a_p = p - N_p."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    n = 0
    for xv in range(p):
        for yv in range(p):
            if curve.equation(xv, yv) % p == 0:
                n += 1
    a = p - n
    if curve.discriminant() % p and a * a > 4 * p:
        raise AssertionError(f"Hasse bound violated: a_{p} = {a}")
    return n, a


def _short_count(a: int, b: int, p: int, chi) -> int:
    """Affine count of y^2 = x^3 + a x + b via quadratic characters."""
    return sum(1 + chi[(x * x * x + a * x + b) % p] for x in range(p))


def _chi_table(p: int) -> list[int]:
    chi = [-1] * p
    chi[0] = 0
    for y in range(1, p):
        chi[y * y % p] = 1
    return chi


def chebyshev_U(k: int, a: int, p: int) -> int:
    """U_0 = 1, U_1 = a, U_{j+1} = a U_j - p U_{j-1}."""
    u0, u1 = 1, a
    if k == 0:
        return u0
    for _ in range(k - 1):
        u0, u1 = u1, a * u1 - p * u0
    return u1


def _check_prime(p: int):
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p < 5:
        raise PrimeTooSmall("short Weierstrass form needs p >= 5")


def sigma_k(p: int, k: int) -> Fraction:
    """-(1/(p-1)) sum over nonsingular (a, b) of U_k(a_p, p)."""
    _check_prime(p)
    if k % 2:
        raise ValueError("k must be even")
    chi = _chi_table(p)
    total = 0
    for a in range(p):
        for b in range(p):
            if (4 * a**3 + 27 * b * b) % p == 0:
                continue
            ap = p - _short_count(a, b, p, chi)
            total += chebyshev_U(k, ap, p)
    return Fraction(-total, p - 1)


def aut_order(a: int, b: int, p: int) -> int:
    """#{u in F_p^*: u^4 a = a, u^6 b = b}."""
    return sum(1 for u in range(1, p) if (pow(u, 4, p) * a - a) % p == 0 and (pow(u, 6, p) * b - b) % p == 0)


def isomorphism_classes(p: int) -> list[tuple[tuple[int, int], int]]:
    """Representatives of nonsingular short curves up to (a, b) ~ (u^4 a, u^6 b), with #Aut."""
    _check_prime(p)
    seen = set()
    out = []
    for a in range(p):
        for b in range(p):
            if (4 * a**3 + 27 * b * b) % p == 0 or (a, b) in seen:
                continue
            orbit = {(pow(u, 4, p) * a % p, pow(u, 6, p) * b % p) for u in range(1, p)}
            seen |= orbit
            out.append(((a, b), aut_order(a, b, p)))
    return out


def sigma_k_by_classes(p: int, k: int) -> Fraction:
    """sigma_k from explicit isomorphism classes weighted by 1/#Aut."""
    chi = _chi_table(p)
    total = Fraction(0)
    for (a, b), aut in isomorphism_classes(p):
        ap = p - _short_count(a, b, p, chi)
        total += Fraction(chebyshev_U(k, ap, p), aut)
    return -total
