"""Independent reference computations used as test oracles.

Nothing here imports quasimod.  Series are plain lists of Fractions indexed
by exponent; numerics use mpmath directly.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath
import sympy


# -- integer-lattice series as lists


def mul(a, b, n):
    out = [Fraction(0)] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j, y in enumerate(b[: n - i]):
                out[i + j] += x * y
    return out


def inv(a, n):
    """1/a for a[0] != 0, first n coefficients."""
    out = [Fraction(1) / a[0]]
    for k in range(1, n):
        s = sum((a[j] * out[k - j] for j in range(1, min(k, len(a) - 1) + 1)), Fraction(0))
        out.append(-s / a[0])
    return out


def compose(f, g, n):
    """f(g) with g[0] = 0, first n coefficients."""
    out = [Fraction(0)] * n
    power = [Fraction(1)] + [Fraction(0)] * (n - 1)
    for c in f[:n]:
        for i in range(n):
            out[i] += c * power[i]
        power = mul(power, g, n)
    return out


def revert(f, n):
    """h with f(h) = q by undetermined coefficients; f[0] = 0, f[1] != 0."""
    h = [Fraction(0), Fraction(1) / f[1]]
    for k in range(2, n):
        trial = h + [Fraction(0)]
        err = compose(f, trial + [Fraction(0)] * (n - len(trial)), k + 1)[k]
        trial[k] = -err / f[1]
        h = trial
    return h[:n]


# -- arithmetic


def sigma(k, n):
    return sum(d**k for d in range(1, n + 1) if n % d == 0)


def eisenstein(weight, n):
    b = {2: -24, 4: 240, 6: -504}[weight]
    return [Fraction(1)] + [Fraction(b * sigma(weight - 1, m)) for m in range(1, n)]


def euler_product(n, power):
    """prod_{m>=1} (1 - q^m)^power, first n coefficients, by repeated factors."""
    out = [Fraction(1)] + [Fraction(0)] * (n - 1)
    for m in range(1, n):
        if power >= 0:
            for _ in range(power):
                out = [out[i] - (out[i - m] if i >= m else 0) for i in range(n)]
        else:
            for _ in range(-power):
                # divide by (1 - q^m): running sum with stride m
                for i in range(m, n):
                    out[i] += out[i - m]
    return out


def tau_values(n):
    """tau(1..n) from q prod (1 - q^m)^24."""
    p = euler_product(n, 24)
    return [int(x) for x in p[:n]]


def j_coefficients(n):
    """Coefficients of q^-1 .. q^(n-2) of 1728 E4^3 / (E4^3 - E6^2)."""
    m = n + 1
    e4 = eisenstein(4, m)
    e6 = eisenstein(6, m)
    e43 = mul(mul(e4, e4, m), e4, m)
    d = [x - y for x, y in zip(e43, mul(e6, e6, m))]
    shifted = [x / 1728 for x in d[1:]]  # Delta / q
    return mul(e43, inv(shifted, m - 1), m - 1)[:n]


def theta(which, bound):
    """{exponent: coeff} of theta_which for exponents < bound, by direct summation."""
    out = {}
    n = -200
    while n <= 200:
        if which == 2:
            e = Fraction((2 * n + 1) ** 2, 8)
            c = 1
        else:
            e = Fraction(n * n, 2)
            c = (-1) ** (n % 2) if which == 4 else 1
        if e < bound:
            out[e] = out.get(e, 0) + c
        n += 1
    return {e: c for e, c in out.items() if c}


def pentagonal_eta(n):
    """prod (1 - q^m) via Euler's pentagonal number theorem."""
    out = [0] * n
    k = 0
    while True:
        done = True
        for kk in ({k, -k} if k else {0}):
            e = kk * (3 * kk - 1) // 2
            if e < n:
                out[e] += (-1) ** (kk % 2)
                done = False
        if done:
            break
        k += 1
    return out


# -- finite fields


def legendre(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def affine_count(a1, a2, a3, a4, a6, p):
    """Affine points on y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 by completing the square (p odd)."""
    if p == 2:
        return sum(
            1
            for x in range(2)
            for y in range(2)
            if (y * y + a1 * x * y + a3 * y - x**3 - a2 * x * x - a4 * x - a6) % 2 == 0
        )
    total = 0
    for x in range(p):
        b = a1 * x + a3
        c = x**3 + a2 * x * x + a4 * x + a6
        total += 1 + legendre(b * b + 4 * c, p)
    return total


# -- Weierstrass coefficients by the classical recursion in sympy


def weierstrass_c(K):
    T2, T3 = sympy.symbols("t2 t3")
    c = {2: T2 / 20, 3: T3 / 28}
    for k in range(4, K + 1):
        c[k] = sympy.expand(sympy.Rational(3, (2 * k + 1) * (k - 3)) * sum(c[m] * c[k - m] for m in range(2, k - 1)))
    return c, (T2, T3)


# -- numerics


def hyp2f1(a, b, c, z, dps=80):
    with mpmath.workdps(dps):
        return mpmath.hyp2f1(_mp(a), _mp(b), _mp(c), z)


def _mp(v):
    v = Fraction(v)
    return mpmath.mpf(v.numerator) / v.denominator


def real_period(numer, t1v, t2v, t3v, dps=40):
    """2 * int_{e1}^{e2} numer(x) dx / sqrt(P(x)) between the two smallest real roots
    of P = 4(x-t1)^3 - t2(x-t1) - t3, for P with three real roots; P > 0 there.

    With x = e1 + (e2 - e1) sin^2 s the integrand becomes numer(x)/sqrt(e3 - x) ds
    on [0, pi/2].  Exact forms d(x^a y) integrate to zero over this closed cycle.
    """
    with mpmath.workdps(dps):
        t1v, t2v, t3v = (_mp(v) for v in (t1v, t2v, t3v))
        roots = sorted(mpmath.re(r) for r in mpmath.polyroots([4, 0, -t2v, -t3v], maxsteps=200, extraprec=200))
        e1, e2, e3 = (r + t1v for r in roots)

        def integrand(s):
            x = e1 + (e2 - e1) * mpmath.sin(s) ** 2
            return numer(x) / mpmath.sqrt(e3 - x)

        return 2 * mpmath.quad(integrand, [0, mpmath.pi / 2])
