"""Sparse polynomials in t1..t4, x over Q (or Q(zeta_3)) and fractions whose
denominators come from a fixed catalog of irreducibles.  1-forms and vector
fields on the parameter space take such coefficients.

Fractions never use a polynomial gcd.  Their denominators are products of
powers of

    Delta = 27 t3^2 - t2^3,  t1 - t2,  t2 - t3,  t1 - t3

and equality is decided by cross-multiplication.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .numeric import CycloNumber, rational_str

__all__ = [
    "VARS",
    "WEIGHTS",
    "ParamPoly",
    "ParamFraction",
    "ParamOneForm",
    "VectorFieldT",
    "NotExact",
    "var",
    "t1",
    "t2",
    "t3",
    "t4",
    "x",
    "DELTA",
    "as_catalog_monomial",
    "CATALOG",
    "total_differential",
    "pair",
    "weight_grading",
    "solve_linear",
]

VARS = ("t1", "t2", "t3", "t4", "x")
WEIGHTS = (2, 4, 6, 2, 2)
_NV = len(VARS)
_IDX = {v: i for i, v in enumerate(VARS)}
_ZERO_EXP = (0,) * _NV


class NotExact(ArithmeticError):
    pass


def _order_key(e):
    # weighted degree first, then lexicographic with x > t4 > t3 > t2 > t1
    return (sum(w * k for w, k in zip(WEIGHTS, e)), tuple(reversed(e)))


def _coeff_to_str(c) -> str:
    if isinstance(c, CycloNumber):
        return str(c)
    return rational_str(c)


class ParamPoly:
    """Immutable sparse polynomial; terms map exponent 5-tuples to nonzero coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        clean = {}
        for e, c in (terms or {}).items():
            if not isinstance(c, CycloNumber):
                c = Fraction(c)
            if c:
                clean[tuple(e)] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("ParamPoly is immutable")

    @classmethod
    def _make(cls, terms: dict) -> "ParamPoly":
        obj = object.__new__(cls)
        object.__setattr__(obj, "terms", {e: c for e, c in terms.items() if c})
        return obj

    @classmethod
    def const(cls, c) -> "ParamPoly":
        return cls({_ZERO_EXP: c})

    @classmethod
    def parse(cls, text: str) -> "ParamPoly":
        """Parse an expression such as ``27*t3^2 - t2^3`` or ``x**5 + t1*x``."""
        import sympy

        syms = sympy.symbols(VARS)
        expr = sympy.sympify(text.replace("^", "**"), locals=dict(zip(VARS, syms)))
        extra = expr.free_symbols - set(syms)
        if extra:
            raise ValueError(f"unknown variables {sorted(map(str, extra))}; allowed: {VARS}")
        poly = sympy.Poly(expr, *syms)
        terms = {}
        for mon, c in poly.terms():
            c = sympy.Rational(c)
            terms[tuple(int(k) for k in mon)] = Fraction(int(c.p), int(c.q))
        return cls(terms)

    # -- structure
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(e == _ZERO_EXP for e in self.terms)

    def constant_value(self):
        return self.terms.get(_ZERO_EXP, Fraction(0))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _order_key(t[0]), reverse=True)

    def leading_term(self):
        return max(self.terms.items(), key=lambda t: _order_key(t[0]))

    def degree(self, v: str) -> int:
        i = _IDX[v]
        return max((e[i] for e in self.terms), default=-1)

    def coeff_in(self, v: str, k: int) -> "ParamPoly":
        """Coefficient of v^k, a polynomial in the other variables."""
        i = _IDX[v]
        out = {}
        for e, c in self.terms.items():
            if e[i] == k:
                e2 = list(e)
                e2[i] = 0
                out[tuple(e2)] = c
        return ParamPoly._make(out)

    def variables(self) -> set[str]:
        return {VARS[i] for e in self.terms for i, k in enumerate(e) if k}

    # -- arithmetic
    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return ParamPoly._make(out)

    __radd__ = __add__

    def __neg__(self):
        return ParamPoly._make({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycloNumber)):
            return ParamPoly._make({e: c * other for e, c in self.terms.items()})
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return ParamPoly._make(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, CycloNumber)):
            inv = other.inverse() if isinstance(other, CycloNumber) else Fraction(1) / Fraction(other)
            return self * inv
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = ParamPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- calculus / substitution
    def diff(self, v: str) -> "ParamPoly":
        i = _IDX[v]
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                out[tuple(e2)] = c * e[i]
        return ParamPoly._make(out)

    def substitute(self, bindings: Mapping[str, "ParamPoly"]) -> "ParamPoly":
        """Simultaneous substitution v -> bindings[v]; a ring homomorphism."""
        subs = [(_IDX[v], _as_poly(p)) for v, p in bindings.items()]
        cache: dict = {}

        def power(i, p, k):
            key = (i, k)
            if key not in cache:
                cache[key] = p**k
            return cache[key]

        result = ParamPoly()
        for e, c in self.terms.items():
            e2 = list(e)
            term = ParamPoly.const(c)
            for i, p in subs:
                if e2[i]:
                    term = term * power(i, p, e2[i])
                    e2[i] = 0
            mono = ParamPoly._make({tuple(e2): Fraction(1)})
            result = result + term * mono
        return result

    def evaluate(self, values: Mapping[str, object]):
        total = 0
        for e, c in self.terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    term = term * values[VARS[i]] ** k
            total = total + term
        return total

    # -- division
    def divmod(self, f: "ParamPoly"):
        """Multivariate division by a single polynomial: self = quo*f + rem."""
        if f.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lt_e, lt_c = f.leading_term()
        inv = lt_c.inverse() if isinstance(lt_c, CycloNumber) else Fraction(1) / lt_c
        quo: dict = {}
        rem: dict = {}
        p = dict(self.terms)
        while p:
            e, c = max(p.items(), key=lambda t: _order_key(t[0]))
            if all(a >= b for a, b in zip(e, lt_e)):
                m = tuple(a - b for a, b in zip(e, lt_e))
                k = c * inv
                quo[m] = quo.get(m, 0) + k
                for e2, c2 in f.terms.items():
                    e3 = tuple(a + b for a, b in zip(m, e2))
                    v = p.get(e3, 0) - k * c2
                    if v:
                        p[e3] = v
                    else:
                        p.pop(e3, None)
            else:
                rem[e] = c
                del p[e]
        return ParamPoly._make(quo), ParamPoly._make(rem)

    def divexact(self, f: "ParamPoly") -> "ParamPoly":
        quo, rem = self.divmod(f)
        if not rem.is_zero():
            raise NotExact("polynomial division is not exact")
        return quo

    # -- grading
    def weights(self, weights=WEIGHTS) -> set[int]:
        return {sum(w * k for w, k in zip(weights, e)) for e in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.weights()) <= 1

    # -- output
    def __str__(self):
        if not self.terms:
            return "0"
        out = ""
        for n, (e, c) in enumerate(self.sorted_terms()):
            mono = "*".join(
                VARS[i] if k == 1 else f"{VARS[i]}^{k}" for i, k in enumerate(e) if k
            )
            neg = not isinstance(c, CycloNumber) and c < 0
            mag = -c if neg else c
            if not mono:
                body = _coeff_to_str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{_coeff_to_str(mag)}*{mono}"
            if n == 0:
                out = ("-" if neg else "") + body
            else:
                out += (" - " if neg else " + ") + body
        return out

    def __repr__(self):
        return f"ParamPoly({self})"


def _as_poly(p):
    if isinstance(p, ParamPoly):
        return p
    if isinstance(p, (int, Fraction, CycloNumber)):
        return ParamPoly.const(p)
    return NotImplemented


def var(name: str) -> ParamPoly:
    e = [0] * _NV
    e[_IDX[name]] = 1
    return ParamPoly({tuple(e): 1})


t1, t2, t3, t4, x = (var(v) for v in VARS)
DELTA = 27 * t3**2 - t2**3

CATALOG: dict[str, ParamPoly] = {
    "Delta": DELTA,
    "t1-t2": t1 - t2,
    "t2-t3": t2 - t3,
    "t1-t3": t1 - t3,
}
_CAT_DISPLAY = {"Delta": "Δ", "t1-t2": "(t1-t2)", "t2-t3": "(t2-t3)", "t1-t3": "(t1-t3)"}


def as_catalog_monomial(p: ParamPoly):
    """Write p as c * prod(catalog^e); returns (c, {name: e}) or raises NotExact."""
    if p.is_zero():
        raise NotExact("zero is not a catalog monomial")
    exps = {}
    for name, f in CATALOG.items():
        while True:
            quo, rem = p.divmod(f)
            if not rem.is_zero():
                break
            p = quo
            exps[name] = exps.get(name, 0) + 1
    if not p.is_constant():
        raise NotExact(f"{p} is not a product of catalog factors")
    return p.constant_value(), exps


class ParamFraction:
    """numerator / prod(catalog factor ^ exponent)."""

    __slots__ = ("num", "den")

    def __init__(self, num, den: Mapping[str, int] | None = None):
        num = _as_poly(num)
        den = {k: v for k, v in (den or {}).items() if v}
        for k, v in den.items():
            if k not in CATALOG or v < 0:
                raise ValueError(f"bad denominator factor {k}^{v}")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("ParamFraction is immutable")

    def den_poly(self) -> ParamPoly:
        p = ParamPoly.const(1)
        for k, v in self.den.items():
            p = p * CATALOG[k] ** v
        return p

    def _lift(self, den: Mapping[str, int]) -> ParamPoly:
        """Numerator over a larger denominator ``den``."""
        p = self.num
        for k, v in den.items():
            extra = v - self.den.get(k, 0)
            if extra:
                p = p * CATALOG[k] ** extra
        return p

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other):
        other = _as_frac(other)
        if other is NotImplemented:
            return other
        den = {k: max(self.den.get(k, 0), other.den.get(k, 0)) for k in set(self.den) | set(other.den)}
        return ParamFraction(self._lift(den) + other._lift(den), den)

    __radd__ = __add__

    def __neg__(self):
        return ParamFraction(-self.num, self.den)

    def __sub__(self, other):
        other = _as_frac(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_frac(other)
        if other is NotImplemented:
            return other
        den = dict(self.den)
        for k, v in other.den.items():
            den[k] = den.get(k, 0) + v
        return ParamFraction(self.num * other.num, den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, CycloNumber)):
            return ParamFraction(self.num / other, self.den)
        other = _as_frac(other)
        if other is NotImplemented:
            return other
        c, exps = as_catalog_monomial(other.num)
        den = dict(self.den)
        for k, v in exps.items():
            den[k] = den.get(k, 0) + v
        num = self.num / c
        for k, v in other.den.items():
            num = num * CATALOG[k] ** v
        return ParamFraction(num, den)

    def __eq__(self, other):
        other = _as_frac(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num * other.den_poly() == other.num * self.den_poly()

    __hash__ = None

    def as_poly(self) -> ParamPoly:
        if not self.den:
            return self.num
        return self.num.divexact(self.den_poly())

    def is_polynomial(self) -> bool:
        try:
            self.as_poly()
        except NotExact:
            return False
        return True

    def reduced(self) -> "ParamFraction":
        """Cancel catalog factors that divide the numerator."""
        num = self.num
        den = dict(self.den)
        for k in list(den):
            while den[k]:
                quo, rem = num.divmod(CATALOG[k])
                if not rem.is_zero():
                    break
                num = quo
                den[k] -= 1
        return ParamFraction(num, den)

    def substitute(self, bindings: Mapping[str, ParamPoly]) -> "ParamFraction":
        num = self.num.substitute(bindings)
        den: dict = {}
        for k, v in self.den.items():
            c, exps = as_catalog_monomial(CATALOG[k].substitute(bindings))
            num = num / c**v
            for k2, v2 in exps.items():
                den[k2] = den.get(k2, 0) + v * v2
        return ParamFraction(num, den)

    def diff(self, v: str) -> "ParamFraction":
        """Partial derivative by the quotient rule over catalog factors."""
        if not self.den:
            return ParamFraction(self.num.diff(v))
        # d(N / prod f^e) = (N' prod f - N sum e f' prod_{j != i} f) / (prod f^e * prod f)
        factors = list(self.den.items())
        prod_all = ParamPoly.const(1)
        for k, _ in factors:
            prod_all = prod_all * CATALOG[k]
        top = self.num.diff(v) * prod_all
        for k, e in factors:
            others = ParamPoly.const(1)
            for k2, _ in factors:
                if k2 != k:
                    others = others * CATALOG[k2]
            top = top - self.num * CATALOG[k].diff(v) * others * e
        den = {k: e + 1 for k, e in factors}
        return ParamFraction(top, den)

    def __str__(self):
        if not self.den:
            return str(self.num)
        den = "*".join(
            _CAT_DISPLAY[k] + (f"^{v}" if v > 1 else "") for k, v in sorted(self.den.items())
        )
        return f"({self.num}) / {den}"

    def __repr__(self):
        return f"ParamFraction({self})"


def _as_frac(p):
    if isinstance(p, ParamFraction):
        return p
    p = _as_poly(p)
    if p is NotImplemented:
        return p
    return ParamFraction(p)


PARAMS = ("t1", "t2", "t3", "t4")


class ParamOneForm:
    """sum_i c_i dt_i with fraction coefficients (dt4 used only in the 4-variable check)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        cs = [_as_frac(c) for c in coeffs]
        cs += [ParamFraction(ParamPoly())] * (4 - len(cs))
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("ParamOneForm is immutable")

    @classmethod
    def dt(cls, i: int) -> "ParamOneForm":
        cs = [0, 0, 0, 0]
        cs[i - 1] = 1
        return cls(cs)

    def __add__(self, other):
        if isinstance(other, ParamOneForm):
            return ParamOneForm(a + b for a, b in zip(self.coeffs, other.coeffs))
        if other == 0:
            return self
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return ParamOneForm(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, f):
        return ParamOneForm(c * f for c in self.coeffs)

    __rmul__ = __mul__

    def __truediv__(self, f):
        return ParamOneForm(c / f for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, ParamOneForm):
            return NotImplemented
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    __hash__ = None

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def substitute(self, bindings: Mapping[str, ParamPoly]) -> "ParamOneForm":
        """Pull back along t -> bindings(t): dt_i -> d(bindings[t_i])."""
        out = ParamOneForm([])
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            name = PARAMS[i]
            image = bindings.get(name, var(name))
            out = out + total_differential(image) * c.substitute(bindings)
        return out

    def __str__(self):
        parts = [f"({c})*dt{i + 1}" for i, c in enumerate(self.coeffs) if not c.is_zero()]
        return " + ".join(parts) if parts else "0"

    __repr__ = __str__


class VectorFieldT:
    """sum_i R_i d/dt_i with polynomial (or fraction) components."""

    __slots__ = ("components",)

    def __init__(self, components: Iterable):
        object.__setattr__(self, "components", tuple(components))

    def __setattr__(self, name, value):
        raise AttributeError("VectorFieldT is immutable")

    def __getitem__(self, i):
        return self.components[i]

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def apply(self, f) -> ParamFraction:
        """Derivation f -> df(V)."""
        return pair(total_differential(f), self)

    def __eq__(self, other):
        if not isinstance(other, VectorFieldT):
            return NotImplemented
        return len(self) == len(other) and all(_as_frac(a) == _as_frac(b) for a, b in zip(self, other))

    __hash__ = None

    def __str__(self):
        return " + ".join(f"({c})*d/d{PARAMS[i]}" for i, c in enumerate(self.components))

    __repr__ = __str__


def total_differential(f) -> ParamOneForm:
    f = _as_frac(f)
    return ParamOneForm(f.diff(v) for v in PARAMS)


def pair(omega: ParamOneForm, field: VectorFieldT) -> ParamFraction:
    total = ParamFraction(ParamPoly())
    for c, r in zip(omega.coeffs, field.components):
        if not c.is_zero():
            total = total + c * _as_frac(r)
    return total


def weight_grading(p: ParamPoly) -> set[int]:
    """Weights of the homogeneous components under deg(t_i) = 2i (and deg x = 2)."""
    if p.degree("t4") > 0:
        raise ValueError("weight grading is defined on Q[t1, t2, t3, x]")
    return p.weights()


def solve_linear(matrix, rhs):
    """Exact Gauss-Jordan solve of a square system over a field.

    Entries may be Fractions or CycloNumbers.  Raises ZeroDivisionError if the
    matrix is singular.
    """
    n = len(matrix)
    a = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular linear system")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        inv = p.inverse() if isinstance(p, CycloNumber) else Fraction(1) / p
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]
