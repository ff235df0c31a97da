"""Local z-expansion of the Weierstrass coordinates on y^2 = 4x^3 - t2 x - t3
and the modular forms G_{2k+2} as polynomials in t2, t3.

Writing x = z^-2 + sum_{m>=0} c_m z^m and y = dx/dz, the coefficient of
z^(m-4) in y^2 - 4x^3 + t2 x + t3 is -4(m+3) c_m plus terms in c_0 .. c_{m-1},
so the c_m are fixed one at a time.  The coefficient of z^(n-2) is called g_n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .eisenstein import QuasiModularPoly
from .sympoly import ParamPoly, t2, t3

__all__ = [
    "LaurentZSeries",
    "weierstrass_expansion",
    "curve_residual",
    "g_coefficient",
    "eisenstein_modular",
    "classical_recursion",
]


@dataclass(frozen=True)
class LaurentZSeries:
    """sum_{k=low}^{top} coeffs[k] z^k with ParamPoly coefficients, known modulo z^(top+1)."""

    coeffs: dict
    top: int

    def __getitem__(self, k) -> ParamPoly:
        if k > self.top:
            raise ValueError(f"z^{k} is beyond the known order")
        return self.coeffs.get(k, ParamPoly())

    @property
    def low(self) -> int:
        return min((k for k, c in self.coeffs.items() if not c.is_zero()), default=self.top + 1)

    def __add__(self, other):
        top = min(self.top, other.top)
        out = {}
        for k in set(self.coeffs) | set(other.coeffs):
            if k <= top:
                out[k] = self.coeffs.get(k, ParamPoly()) + other.coeffs.get(k, ParamPoly())
        return LaurentZSeries(out, top)

    def __neg__(self):
        return LaurentZSeries({k: -c for k, c in self.coeffs.items()}, self.top)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "LaurentZSeries":
        return LaurentZSeries({k: v * c for k, v in self.coeffs.items()}, self.top)

    def __mul__(self, other):
        if not isinstance(other, LaurentZSeries):
            return self.scale(other)
        top = min(self.top + other.low, other.top + self.low)
        out: dict = {}
        for i, a in self.coeffs.items():
            if a.is_zero():
                continue
            for j, b in other.coeffs.items():
                if i + j <= top and not b.is_zero():
                    out[i + j] = out.get(i + j, ParamPoly()) + a * b
        return LaurentZSeries(out, top)

    def derive(self) -> "LaurentZSeries":
        return LaurentZSeries({k - 1: c * k for k, c in self.coeffs.items() if k}, self.top - 1)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs.values())

    def exponents(self) -> list[int]:
        return sorted(k for k, c in self.coeffs.items() if not c.is_zero())

    def __str__(self):
        parts = [f"({self.coeffs[k]})*z^{k}" for k in self.exponents()]
        return " + ".join(parts + [f"O(z^{self.top + 1})"])


def _const(c, top) -> LaurentZSeries:
    return LaurentZSeries({0: ParamPoly.const(1) * c if not isinstance(c, ParamPoly) else c}, top)


def curve_residual(xs: LaurentZSeries, ys: LaurentZSeries) -> LaurentZSeries:
    """y^2 - 4x^3 + t2 x + t3."""
    return ys * ys - (xs * xs * xs).scale(4) + xs.scale(t2) + _const(t3, xs.top)


@lru_cache(maxsize=None)
def weierstrass_expansion(K: int):
    """(x, y) with x known modulo z^(2K-1); K counts the coefficients g_2 .. g_{2K}."""
    if K < 2:
        raise ValueError("K must be at least 2")
    top = 2 * K - 2
    c: dict = {-2: ParamPoly.const(1)}
    for m in range(0, top + 1):
        xs = LaurentZSeries(dict(c), m)
        ys = xs.derive()
        r = curve_residual(xs, ys)
        # c_m enters the residual at z^(m-4) with factor -4(m+3); c_m is still zero here
        c[m] = r[m - 4] / (4 * (m + 3))
    xs = LaurentZSeries(c, top)
    return xs, xs.derive()


def g_coefficient(n: int) -> ParamPoly:
    """g_n: coefficient of z^(n-2) in x - z^-2."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return ParamPoly()
    K = max(2, (n + 2) // 2)
    xs, _ = weierstrass_expansion(K)
    return xs[n - 2]


def eisenstein_modular(k: int) -> QuasiModularPoly:
    """G_{2k+2}, homogeneous of weight 2k+2 in Q[t2, t3]."""
    if k < 1:
        raise ValueError("k must be at least 1")
    p = g_coefficient(2 * k + 2)
    return QuasiModularPoly(p, 2 * k + 2, 0)


def classical_recursion(K: int) -> list[ParamPoly]:
    """[c_2, ..., c_K] with c_2 = t2/20, c_3 = t3/28 and
    c_k = 3/((2k+1)(k-3)) sum_{m=2}^{k-2} c_m c_{k-m}; c_k = g_{2k}."""
    c = {2: t2 / 20, 3: t3 / 28}
    for k in range(4, K + 1):
        s = sum((c[m] * c[k - m] for m in range(2, k - 1)), ParamPoly())
        c[k] = s * Fraction(3, (2 * k + 1) * (k - 3))
    return [c[k] for k in range(2, K + 1)]
