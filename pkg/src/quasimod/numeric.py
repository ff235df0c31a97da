"""Coefficient fields and arbitrary-precision numbers.

Exact arithmetic uses :class:`fractions.Fraction` for Q and :class:`CycloNumber`
for the quadratic cyclotomic fields Q(zeta_3) and Q(i).  Floating point work
goes through mpmath with an explicit precision in bits.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import mpmath

BigRational = Fraction

__all__ = [
    "BigRational",
    "CycloNumber",
    "BigComplex",
    "ConductorMismatch",
    "parse_rational",
    "rational_str",
    "pi_value",
    "pi_fixed",
    "zeta3",
    "imag_unit",
]


class ConductorMismatch(ValueError):
    pass


def parse_rational(s) -> Fraction:
    if isinstance(s, Fraction):
        return s
    if isinstance(s, int):
        return Fraction(s)
    return Fraction(str(s).strip())


def rational_str(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# Cyclotomic numbers

# (c1, c0) with x^2 = -c1*x - c0 for the two quadratic conductors
_MINPOLY = {3: (1, 1), 4: (0, 1)}
_PHI = {1: 1, 3: 2, 4: 2}


class CycloNumber:
    """Element of Q(zeta_n) for n in {1, 3, 4}, stored in the power basis.

    Values are immutable.  Arithmetic with ints and Fractions is allowed and
    a conductor-1 value behaves like a plain rational.
    """

    __slots__ = ("conductor", "coords")

    def __init__(self, conductor: int, coords):
        if conductor not in _PHI:
            raise ValueError(f"unsupported conductor {conductor}")
        coords = tuple(Fraction(c) for c in coords)
        n = _PHI[conductor]
        if len(coords) < n:
            coords = coords + (Fraction(0),) * (n - len(coords))
        elif len(coords) > n:
            coords = _reduce(conductor, coords)
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, name, value):
        raise AttributeError("CycloNumber is immutable")

    # -- coercion helpers
    def _coerce(self, other):
        if isinstance(other, CycloNumber):
            if other.conductor == self.conductor:
                return other
            if other.conductor == 1:
                return CycloNumber(self.conductor, (other.coords[0],))
            if self.conductor == 1:
                return None
            raise ConductorMismatch(f"conductors {self.conductor} and {other.conductor}")
        if isinstance(other, (int, Fraction)):
            return CycloNumber(self.conductor, (other,))
        return NotImplemented

    def _lift(self, other):
        # self has conductor 1 and other a larger one
        return CycloNumber(other.conductor, (self.coords[0],))

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o is None:
            return self._lift(other) + other
        return CycloNumber(self.conductor, [a + b for a, b in zip(self.coords, o.coords)])

    __radd__ = __add__

    def __neg__(self):
        return CycloNumber(self.conductor, [-a for a in self.coords])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o is None:
            return self._lift(other) - other
        return CycloNumber(self.conductor, [a - b for a, b in zip(self.coords, o.coords)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o is None:
            return self._lift(other) * other
        if self.conductor == 1:
            return CycloNumber(1, (self.coords[0] * o.coords[0],))
        a0, a1 = self.coords
        b0, b1 = o.coords
        c1, c0 = _MINPOLY[self.conductor]
        # (a0 + a1 x)(b0 + b1 x), x^2 = -c1 x - c0
        sq = a1 * b1
        return CycloNumber(self.conductor, (a0 * b0 - c0 * sq, a0 * b1 + a1 * b0 - c1 * sq))

    __rmul__ = __mul__

    def conjugate(self):
        if self.conductor == 1:
            return self
        a0, a1 = self.coords
        if self.conductor == 3:
            return CycloNumber(3, (a0 - a1, -a1))
        return CycloNumber(4, (a0, -a1))

    def norm(self) -> Fraction:
        return (self * self.conjugate()).coords[0]

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in cyclotomic field")
        c = self.conjugate()
        return CycloNumber(self.conductor, [x / n for x in c.coords])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o is None:
            return self._lift(other) / other
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = CycloNumber(self.conductor, (1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except ConductorMismatch:
            return False
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            return self._lift(other) == other
        return self.coords == o.coords

    def __hash__(self):
        if all(c == 0 for c in self.coords[1:]):
            return hash(self.coords[0])
        return hash((self.conductor, self.coords))

    def __bool__(self):
        return any(self.coords)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def embedding(self, prec: int = 53) -> mpmath.mpc:
        """Complex value under zeta_n -> exp(2 pi i / n)."""
        with mpmath.workprec(prec):
            z = mpmath.expjpi(mpmath.mpf(2) / self.conductor) if self.conductor > 1 else 1
            return sum(mpmath.mpf(c.numerator) / c.denominator * z**k for k, c in enumerate(self.coords))

    def __repr__(self):
        return f"CycloNumber({self.conductor}, {[rational_str(c) for c in self.coords]})"

    def __str__(self):
        if self.is_rational():
            return rational_str(self.coords[0])
        name = {3: "z3", 4: "i"}[self.conductor]
        parts = []
        for k, c in enumerate(self.coords):
            if c == 0:
                continue
            mono = "" if k == 0 else (name if k == 1 else f"{name}^{k}")
            if not mono:
                parts.append(rational_str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{rational_str(c)}*{mono}")
        return "(" + " + ".join(parts).replace("+ -", "- ") + ")"


def _reduce(conductor, coords):
    coords = list(coords)
    if conductor == 1:
        return (sum(coords, Fraction(0)),)
    c1, c0 = _MINPOLY[conductor]
    for k in range(len(coords) - 1, 1, -1):
        top = coords[k]
        coords[k] = Fraction(0)
        coords[k - 1] -= c1 * top
        coords[k - 2] -= c0 * top
    return tuple(coords[:2])


def zeta3() -> CycloNumber:
    return CycloNumber(3, (0, 1))


def imag_unit() -> CycloNumber:
    return CycloNumber(4, (0, 1))


# ---------------------------------------------------------------------------
# Arbitrary precision floats

Real = Union[int, float, Fraction, mpmath.mpf]


@dataclass(frozen=True)
class BigComplex:
    """Complex number carried at a fixed working precision (bits)."""

    real: mpmath.mpf
    imag: mpmath.mpf
    precision_bits: int

    @classmethod
    def from_mpc(cls, z, prec: int) -> "BigComplex":
        with mpmath.workprec(prec):
            z = mpmath.mpc(z)
            return cls(+z.real, +z.imag, prec)

    def to_mpc(self) -> mpmath.mpc:
        # built at the carried precision, not the ambient one
        with mpmath.workprec(self.precision_bits):
            return mpmath.mpc(self.real, self.imag)

    def _binop(self, other, op):
        prec = self.precision_bits
        if isinstance(other, BigComplex):
            prec = max(prec, other.precision_bits)
            other = other.to_mpc()
        elif isinstance(other, Fraction):
            other = mpmath.mpf(other.numerator) / other.denominator
        with mpmath.workprec(prec):
            return BigComplex.from_mpc(op(self.to_mpc(), other), prec)

    def __add__(self, other):
        return self._binop(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binop(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._binop(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._binop(other, lambda a, b: a / b)

    def __neg__(self):
        return BigComplex(-self.real, -self.imag, self.precision_bits)

    def __abs__(self):
        with mpmath.workprec(self.precision_bits):
            return mpmath.fabs(self.to_mpc())

    def to_hex(self) -> tuple[str, str]:
        return (_mpf_hex(self.real), _mpf_hex(self.imag))

    @classmethod
    def from_hex(cls, pair, prec: int) -> "BigComplex":
        return cls(_hex_mpf(pair[0], prec), _hex_mpf(pair[1], prec), prec)

    def __str__(self):
        digits = max(15, int(self.precision_bits * 0.30103))
        return mpmath.nstr(self.to_mpc(), digits)


def _mpf_hex(x: mpmath.mpf) -> str:
    if not isinstance(x, mpmath.mpf):
        x = mpmath.mpf(x)
    if not mpmath.isfinite(x):
        raise ValueError("only finite values have a hex form")
    # man_exp drops the sign; the raw tuple keeps it
    sign, man, exp, _ = x._mpf_
    return f"{'-' if sign else ''}0x{int(man):x}p{int(exp)}"


def _hex_mpf(s: str, prec: int) -> mpmath.mpf:
    sign = -1 if s.startswith("-") else 1
    s = s.lstrip("-")
    man_s, exp_s = s[2:].split("p")
    man = int(man_s, 16) if man_s else 0
    with mpmath.workprec(prec):
        return mpmath.ldexp(mpmath.mpf(sign * man), int(exp_s))


def pi_fixed(bits: int) -> int:
    """floor(pi * 2**bits) up to a couple of ulps, by Machin's formula."""
    guard = 20
    one = 1 << (bits + guard)

    def arctan_inv(n):
        # arctan(1/n) in fixed point
        total = term = one // n
        n2 = n * n
        k = 1
        while term:
            term //= n2
            k += 2
            total += -(term // k) if (k // 2) % 2 else term // k
        return total

    return (16 * arctan_inv(5) - 4 * arctan_inv(239)) >> guard


def pi_value(precision_bits: int) -> BigComplex:
    if precision_bits < 64:
        raise ValueError("precision_bits must be at least 64")
    with mpmath.workprec(precision_bits):
        val = mpmath.ldexp(mpmath.mpf(pi_fixed(precision_bits + 8)), -(precision_bits + 8))
        return BigComplex(+val, mpmath.mpf(0), precision_bits)

