"""Truncated Puiseux series in q with exact coefficients.

A series lives on the exponent lattice (1/d)Z.  It stores a dense list of
coefficients for the exponents k0/d, (k0+1)/d, ..., N/d and is known exactly
up to O(q^((N+1)/d)).  Every operation computes the largest order to which its
result is provably correct, so error never leaks into reported coefficients.

The operator ``D = q d/dq`` acts by q^e -> e q^e.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Iterable, Sequence

from .numeric import CycloNumber, parse_rational, rational_str

__all__ = [
    "PuiseuxSeries",
    "SeriesError",
    "NonUnitDivisor",
    "InvalidValuation",
    "NotRevertible",
    "RootObstruction",
    "q",
    "series",
    "lagrange_revert",
]

ZERO = Fraction(0)
ONE = Fraction(1)
LATTICE_BOUND = 72  # every lattice denominator divides this


class SeriesError(ValueError):
    pass


class NonUnitDivisor(SeriesError, ZeroDivisionError):
    pass


class InvalidValuation(SeriesError):
    pass


class NotRevertible(SeriesError):
    pass


class RootObstruction(SeriesError):
    pass


# ---------------------------------------------------------------------------
# raw coefficient kernels


def _is_rational_list(xs) -> bool:
    return all(type(x) is Fraction or type(x) is int for x in xs)


def _to_ints(xs):
    den = math.lcm(*[Fraction(x).denominator for x in xs]) if xs else 1
    return [int(x * den) if type(x) is int else x.numerator * (den // x.denominator) for x in xs], den


def _conv(a: Sequence, b: Sequence, length: int) -> list:
    """First ``length`` coefficients of the product of two coefficient lists."""
    a = a[:length]
    b = b[:length]
    if not a or not b or length <= 0:
        return [ZERO] * max(length, 0)
    if _is_rational_list(a) and _is_rational_list(b):
        ai, da = _to_ints(a)
        bi, db = _to_ints(b)
        out = [0] * length
        nb = len(bi)
        for i, x in enumerate(ai):
            if not x:
                continue
            lim = min(nb, length - i)
            for j in range(lim):
                y = bi[j]
                if y:
                    out[i + j] += x * y
        den = da * db
        return [Fraction(c, den) for c in out]
    out = [ZERO] * length
    for i, x in enumerate(a):
        if not x:
            continue
        for j in range(min(len(b), length - i)):
            y = b[j]
            if y:
                out[i + j] = out[i + j] + x * y
    return out


def _inverse_raw(a: Sequence, length: int) -> list:
    """Coefficients of 1/a for a power series a with a[0] != 0."""
    inv0 = ONE / a[0] if type(a[0]) in (int, Fraction) else a[0].inverse()
    g = [inv0]
    for n in range(1, length):
        s = ZERO
        for k in range(1, min(n, len(a) - 1) + 1):
            ak = a[k]
            if ak:
                s = s + ak * g[n - k]
        g.append(-(s * inv0))
    return g


def _power_raw(h: Sequence, alpha: Fraction, length: int) -> list:
    """(1 + h_1 x + h_2 x^2 + ...)^alpha by the J.C.P. Miller recurrence (h[0] ignored)."""
    g = [ONE]
    for m in range(1, length):
        s = ZERO
        for k in range(1, min(m, len(h) - 1) + 1):
            hk = h[k]
            if hk:
                s = s + ((alpha + 1) * k - m) * hk * g[m - k]
        g.append(s / m)
    return g


def _field_root(c, n: int):
    if c == 1:
        return ONE
    if isinstance(c, CycloNumber):
        if not c.is_rational():
            raise RootObstruction(f"leading coefficient {c} is not a rational n-th power")
        c = c.coords[0]
    c = Fraction(c)
    sign = 1
    if c < 0:
        if n % 2 == 0:
            raise RootObstruction(f"{c} has no real {n}-th root")
        sign, c = -1, -c
    num = _iroot(c.numerator, n)
    den = _iroot(c.denominator, n)
    if num is None or den is None:
        raise RootObstruction(f"{c} is not an exact {n}-th power")
    return sign * Fraction(num, den)


def _iroot(m: int, n: int):
    if m in (0, 1):
        return m
    r = int(round(m ** (1.0 / n)))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand**n == m:
            return cand
    # large values: integer Newton
    x = 1 << ((m.bit_length() + n - 1) // n)
    while True:
        y = ((n - 1) * x + m // x ** (n - 1)) // n
        if y >= x:
            break
        x = y
    return x if x**n == m else None


# ---------------------------------------------------------------------------


class PuiseuxSeries:
    """Immutable truncated series sum_{k=k0}^{N} c_k q^(k/d) + O(q^((N+1)/d))."""

    __slots__ = ("d", "k0", "coeffs")

    def __init__(self, coeffs: Iterable = (), d: int = 1, k0: int = 0, N: int | None = None):
        if d < 1 or LATTICE_BOUND % d:
            raise SeriesError(f"lattice denominator {d} does not divide {LATTICE_BOUND}")
        cs = [c if isinstance(c, CycloNumber) else parse_rational(c) for c in coeffs]
        if N is None:
            N = k0 + len(cs) - 1
        if N < k0 - 1:
            raise ValueError("truncation order below min exponent")
        length = N - k0 + 1
        if len(cs) < length:
            cs.extend([ZERO] * (length - len(cs)))
        elif len(cs) > length:
            del cs[length:]
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "k0", k0)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("PuiseuxSeries is immutable")

    # -- construction helpers
    @classmethod
    def _raw(cls, coeffs, d, k0, N):
        if LATTICE_BOUND % d:
            raise SeriesError(f"lattice denominator {d} does not divide {LATTICE_BOUND}")
        obj = object.__new__(cls)
        cs = list(coeffs)[: N - k0 + 1]
        if len(cs) < N - k0 + 1:
            cs.extend([ZERO] * (N - k0 + 1 - len(cs)))
        object.__setattr__(obj, "d", d)
        object.__setattr__(obj, "k0", k0)
        object.__setattr__(obj, "coeffs", tuple(cs))
        return obj

    @classmethod
    def monomial(cls, coeff, exponent, prec) -> "PuiseuxSeries":
        """coeff * q^exponent + O(q^prec) on the smallest lattice holding both."""
        e = Fraction(exponent)
        p = Fraction(prec)
        d = math.lcm(e.denominator, p.denominator)
        k = int(e * d)
        N = int(p * d) - 1
        if N < k:
            return cls._raw([], d, N + 1, N)
        return cls._raw([coeff] + [ZERO] * (N - k), d, k, N)

    @classmethod
    def constant(cls, c, prec) -> "PuiseuxSeries":
        return cls.monomial(c, 0, prec)

    # -- basic properties
    @property
    def N(self) -> int:
        return self.k0 + len(self.coeffs) - 1

    @property
    def prec(self) -> Fraction:
        """Exclusive exponent bound: the series is known modulo q^prec."""
        return Fraction(self.N + 1, self.d)

    def exponents(self) -> list[Fraction]:
        return [Fraction(self.k0 + i, self.d) for i in range(len(self.coeffs))]

    def items(self):
        for i, c in enumerate(self.coeffs):
            yield Fraction(self.k0 + i, self.d), c

    def coeff(self, e) -> object:
        e = Fraction(e)
        if e >= self.prec:
            raise SeriesError(f"coefficient of q^{e} is beyond the known order O(q^{self.prec})")
        k = e * self.d
        if k.denominator != 1:
            return ZERO
        i = int(k) - self.k0
        if i < 0:
            return ZERO
        return self.coeffs[i]

    __getitem__ = coeff

    def _val_index(self) -> int | None:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def valuation(self) -> Fraction | None:
        """Exponent of the first nonzero known coefficient (None if all zero)."""
        i = self._val_index()
        return None if i is None else Fraction(self.k0 + i, self.d)

    def leading_coefficient(self):
        i = self._val_index()
        return ZERO if i is None else self.coeffs[i]

    def is_zero(self) -> bool:
        return self._val_index() is None

    # -- lattices
    def refine(self, m: int) -> "PuiseuxSeries":
        """Same series on the finer lattice (1/(m d))Z."""
        if m == 1:
            return self
        cs = [ZERO] * (m * len(self.coeffs))
        for i, c in enumerate(self.coeffs):
            cs[m * i] = c
        N = m * (self.N + 1) - 1
        return PuiseuxSeries._raw(cs, self.d * m, m * self.k0, N)

    def on_lattice(self, d: int) -> "PuiseuxSeries":
        """Re-express on lattice d; coarsening requires vanishing off-lattice terms."""
        if d == self.d:
            return self
        L = math.lcm(d, self.d)
        fine = self.refine(L // self.d)
        if L == d:
            return fine
        m = L // d
        for i, c in enumerate(fine.coeffs):
            if c and (fine.k0 + i) % m:
                raise SeriesError(f"series has terms off the lattice (1/{d})Z")
        k0 = -((-fine.k0) // m)
        N = -(-(fine.N + 1) // m) - 1
        cs = [fine.coeffs[m * k - fine.k0] for k in range(k0, N + 1)]
        return PuiseuxSeries._raw(cs, d, k0, N)

    def simplify_lattice(self) -> "PuiseuxSeries":
        """Coarsest lattice compatible with the nonzero terms and the truncation."""
        g = self.d
        for i, c in enumerate(self.coeffs):
            if c:
                g = math.gcd(g, self.k0 + i)
        g = math.gcd(g, self.N + 1)
        if g == 1:
            return self
        return self.on_lattice(self.d // g)

    @staticmethod
    def _align(a: "PuiseuxSeries", b: "PuiseuxSeries"):
        if a.d == b.d:
            return a, b
        L = math.lcm(a.d, b.d)
        return a.refine(L // a.d), b.refine(L // b.d)

    def truncate(self, prec) -> "PuiseuxSeries":
        """Drop knowledge beyond O(q^prec) (never extends precision)."""
        p = min(Fraction(prec), self.prec)
        s = self
        if (p * self.d).denominator != 1:
            s = self.on_lattice(math.lcm(self.d, p.denominator))
        N = int(p * s.d) - 1
        if N >= s.N:
            return s
        if N < s.k0 - 1:
            return PuiseuxSeries._raw([], s.d, N + 1, N)
        return PuiseuxSeries._raw(s.coeffs, s.d, s.k0, N)

    # -- ring operations
    def __add__(self, other):
        if isinstance(other, (int, Fraction, CycloNumber)):
            if self.prec <= 0:
                return self
            return self._add_scalar(other)
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        a, b = PuiseuxSeries._align(self, other)
        k0 = min(a.k0, b.k0)
        N = min(a.N, b.N)
        if N < k0 - 1:
            return PuiseuxSeries._raw([], a.d, N + 1, N)
        cs = []
        for k in range(k0, N + 1):
            x = a.coeffs[k - a.k0] if a.k0 <= k else ZERO
            y = b.coeffs[k - b.k0] if b.k0 <= k else ZERO
            cs.append(x + y)
        return PuiseuxSeries._raw(cs, a.d, k0, N)

    __radd__ = __add__

    def _add_scalar(self, c):
        if self.k0 > 0:
            cs = [c] + [ZERO] * (self.k0 - 1) + list(self.coeffs)
            return PuiseuxSeries._raw(cs, self.d, 0, self.N)
        cs = list(self.coeffs)
        cs[-self.k0] = cs[-self.k0] + c
        return PuiseuxSeries._raw(cs, self.d, self.k0, self.N)

    def __neg__(self):
        return PuiseuxSeries._raw([-c for c in self.coeffs], self.d, self.k0, self.N)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, CycloNumber, PuiseuxSeries)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "PuiseuxSeries":
        return PuiseuxSeries._raw([c * x for x in self.coeffs], self.d, self.k0, self.N)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycloNumber)):
            return self.scale(other)
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        a, b = PuiseuxSeries._align(self, other)
        ia, ib = a._val_index(), b._val_index()
        va = a.k0 + ia if ia is not None else a.N + 1
        vb = b.k0 + ib if ib is not None else b.N + 1
        N = min(a.N + vb, b.N + va)
        k0 = va + vb
        if ia is None or ib is None or N < k0:
            return PuiseuxSeries._raw([], a.d, N + 1, N)
        cs = _conv(a.coeffs[ia:], b.coeffs[ib:], N - k0 + 1)
        return PuiseuxSeries._raw(cs, a.d, k0, N)

    __rmul__ = __mul__

    def inverse(self) -> "PuiseuxSeries":
        i = self._val_index()
        if i is None:
            raise NonUnitDivisor("cannot invert a series with no nonzero known coefficient")
        v = self.k0 + i
        rel = self.coeffs[i:]
        N = self.N - 2 * v
        g = _inverse_raw(rel, len(rel))
        return PuiseuxSeries._raw(g, self.d, -v, N)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, CycloNumber)):
            if not other:
                raise ZeroDivisionError("division by zero")
            inv = ONE / other if not isinstance(other, CycloNumber) else other.inverse()
            return self.scale(inv)
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            i = self._val_index()
            rel = (self.N - self.k0 - i + 1) if i is not None else 1
            return PuiseuxSeries.constant(ONE, Fraction(rel, self.d))
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- calculus
    def derive(self) -> "PuiseuxSeries":
        """Apply D = q d/dq."""
        cs = []
        for i, c in enumerate(self.coeffs):
            k = self.k0 + i
            cs.append(c * Fraction(k, self.d) if k else ZERO)
        return PuiseuxSeries._raw(cs, self.d, self.k0, self.N)

    def exp(self) -> "PuiseuxSeries":
        i = self._val_index()
        if i is not None and self.k0 + i <= 0:
            raise InvalidValuation("exp needs a series with positive valuation")
        N = self.N
        if N < 0:
            return PuiseuxSeries._raw([], self.d, N + 1, N)
        f = [self.coeff(Fraction(k, self.d)) if k >= self.k0 else ZERO for k in range(N + 1)]
        g = [ONE]
        for n in range(1, N + 1):
            s = ZERO
            for k in range(1, n + 1):
                fk = f[k]
                if fk:
                    s = s + k * fk * g[n - k]
            g.append(s / n)
        return PuiseuxSeries._raw(g, self.d, 0, N)

    def log(self) -> "PuiseuxSeries":
        i = self._val_index()
        if i is None or self.k0 + i != 0 or self.coeffs[i] != 1:
            raise InvalidValuation("log needs a series of the form 1 + O(q^e), e > 0")
        h = self.derive() / self
        cs = [ZERO]
        for k in range(1, h.N + 1):
            cs.append(h.coeff(Fraction(k, self.d)) * Fraction(self.d, k))
        return PuiseuxSeries._raw(cs, self.d, 0, h.N)

    def log_derivative(self) -> "PuiseuxSeries":
        """D(f)/f."""
        return self.derive() / self

    def nth_root(self, n: int) -> "PuiseuxSeries":
        """The n-th root whose leading coefficient is the rational n-th root.

        The result is placed on the lattice (1/(n d))Z.
        """
        if n < 1:
            raise ValueError("n must be positive")
        if LATTICE_BOUND % (self.d * n):
            raise RootObstruction(f"lattice (1/{self.d * n})Z is not supported")
        i = self._val_index()
        if i is None:
            raise RootObstruction("zero series has no normalized root")
        v = self.k0 + i
        c = self.coeffs[i]
        r = _field_root(c, n)
        rel = [x / c for x in self.coeffs[i:]]
        g = _power_raw(rel, Fraction(1, n), len(rel))
        d2 = self.d * n
        cs = [ZERO] * (n * len(g))
        for k, x in enumerate(g):
            cs[n * k] = x * r
        N = v + n * len(g) - 1
        return PuiseuxSeries._raw(cs, d2, v, N)

    def compose(self, g: "PuiseuxSeries") -> "PuiseuxSeries":
        """self(g) for a power series self (integer lattice, no negative powers)
        and g of positive valuation."""
        f = self.on_lattice(1) if self.d != 1 else self
        if f.k0 < 0 and any(f.coeffs[: -f.k0]):
            raise SeriesError("composition needs a power series on the outside")
        vg = g.valuation()
        if vg is None:
            vg = g.prec
        if vg <= 0:
            raise InvalidValuation("inner series must have positive valuation")
        prec = min((f.N + 1) * vg, g.prec)
        gl = g
        d = gl.d
        Nres = int(math.ceil(prec * d)) - 1
        length = Nres + 1
        graw = [gl.coeff(Fraction(k, d)) if k >= gl.k0 else ZERO for k in range(0, length)]
        fc = [f.coeff(k) for k in range(0, f.N + 1)]
        acc = [ZERO] * length
        for c in reversed(fc):
            acc = _conv(acc, graw, length)
            acc[0] = acc[0] + c
        return PuiseuxSeries._raw(acc, d, 0, Nres)

    def __call__(self, g: "PuiseuxSeries") -> "PuiseuxSeries":
        return self.compose(g)

    def revert(self) -> "PuiseuxSeries":
        """Compositional inverse h with self(h(q)) = q."""
        f = self.on_lattice(1) if self.d != 1 else self
        if f.k0 < 0 and any(f.coeffs[: -f.k0]):
            raise NotRevertible("series has negative powers")
        if f.N < 1:
            raise NotRevertible("series known only to O(q)")
        if f.coeff(0) != 0:
            raise NotRevertible("constant term must vanish")
        if f.coeff(1) == 0:
            raise NotRevertible("linear coefficient must be nonzero")
        return lagrange_revert([f.coeff(k) for k in range(0, f.N + 1)])

    def subs_monomial(self, power, scale=None) -> "PuiseuxSeries":
        """f(scale * q^power) for power > 0; a scale needs an integer lattice."""
        p = Fraction(power)
        if p <= 0:
            raise ValueError("power must be positive")
        if scale is not None and scale != 1:
            base = self.on_lattice(1)
            cs = [c * scale**k if c else c for k, c in zip(range(base.k0, base.N + 1), base.coeffs)]
            base = PuiseuxSeries._raw(cs, 1, base.k0, base.N)
        else:
            base = self
        a, b = p.numerator, p.denominator
        cs = [ZERO] * (a * len(base.coeffs))
        for i, c in enumerate(base.coeffs):
            cs[a * i] = c
        return PuiseuxSeries._raw(cs, base.d * b, a * base.k0, a * (base.N + 1) - 1)

    # -- comparison
    def first_difference(self, other: "PuiseuxSeries"):
        """(exponent, mine, theirs) of the first mismatch within common precision, else None."""
        a, b = PuiseuxSeries._align(self, other)
        N = min(a.N, b.N)
        for k in range(min(a.k0, b.k0), N + 1):
            x = a.coeffs[k - a.k0] if a.k0 <= k else ZERO
            y = b.coeffs[k - b.k0] if b.k0 <= k else ZERO
            if x != y:
                return Fraction(k, a.d), x, y
        return None

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, CycloNumber)):
            other = PuiseuxSeries.constant(other, self.prec) if self.prec > 0 else None
            if other is None:
                return True
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        return self.first_difference(other) is None

    __hash__ = None

    # -- I/O
    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "k0": self.k0,
            "N": self.N,
            "coeffs": [_coeff_str(c) for c in self.coeffs],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, obj: dict) -> "PuiseuxSeries":
        return cls([_parse_coeff(c) for c in obj["coeffs"]], d=obj["d"], k0=obj["k0"], N=obj["N"])

    @classmethod
    def from_json(cls, text: str) -> "PuiseuxSeries":
        return cls.from_dict(json.loads(text))

    def pretty(self, var: str = "q", big_o: bool = False) -> str:
        parts = []
        for e, c in self.items():
            if not c:
                continue
            parts.append(_term(c, e, var))
        if big_o:
            parts.append(("+ " if parts else "") + f"O({_power(var, self.prec)})")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            if p.startswith("-"):
                out += " - " + p[1:]
            elif p.startswith("+ "):
                out += " " + p
            else:
                out += " + " + p
        return out

    def __str__(self):
        return self.pretty(big_o=True)

    def __repr__(self):
        return f"PuiseuxSeries({self.pretty(big_o=True)})"


def _coeff_str(c) -> str:
    if isinstance(c, CycloNumber):
        if c.is_rational():
            return rational_str(c.coords[0])
        return json.dumps({"conductor": c.conductor, "coords": [rational_str(x) for x in c.coords]})
    return rational_str(c)


def _parse_coeff(s):
    if isinstance(s, str) and s.startswith("{"):
        obj = json.loads(s)
        return CycloNumber(obj["conductor"], [Fraction(x) for x in obj["coords"]])
    return parse_rational(s)


def _power(var, e: Fraction) -> str:
    if e == 1:
        return var
    if e.denominator == 1:
        return f"{var}^{e.numerator}"
    return f"{var}^({e.numerator}/{e.denominator})"


def _term(c, e: Fraction, var: str) -> str:
    if e == 0:
        return str(c) if not isinstance(c, Fraction) else rational_str(c)
    mono = _power(var, e)
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    cs = str(c) if isinstance(c, CycloNumber) else rational_str(c)
    return f"{cs}*{mono}"


def lagrange_revert(fc: Sequence) -> PuiseuxSeries:
    """Reversion of f = sum fc[k] t^k (fc[0] = 0, fc[1] != 0), known to t^(len-1).

    Uses [q^n] h = (1/n) [t^(n-1)] (t/f)^n.
    """
    N = len(fc) - 1
    shifted = list(fc[1:])  # f/t, known to t^(N-1)
    phi = _inverse_raw(shifted, N)
    h = [ZERO]
    pw = [ONE] + [ZERO] * (N - 1)
    for n in range(1, N + 1):
        pw = _conv(pw, phi, N)
        h.append(pw[n - 1] / n)
    return PuiseuxSeries._raw(h, 1, 0, N)


def q(prec, d: int = 1) -> PuiseuxSeries:
    """The series variable q, known modulo q^prec, on lattice d."""
    return PuiseuxSeries.monomial(ONE, 1, prec).on_lattice(math.lcm(d, Fraction(prec).denominator))


def series(coeffs, d: int = 1, k0: int = 0, N: int | None = None) -> PuiseuxSeries:
    return PuiseuxSeries(coeffs, d=d, k0=k0, N=N)
