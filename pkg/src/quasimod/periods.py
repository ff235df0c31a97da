"""Hypergeometric periods of y^2 = 4x^3 - 3x - psi with tau = (psi + 2)/4.
Exact series give the map q(tau) and the Eisenstein series; mpmath gives the
period matrix numerically.

Periods over delta_2 are (pi/sqrt 3) F(1/6, 5/6, 1 | tau) for dx/y and
-(pi/sqrt 3) F(-1/6, 7/6, 1 | tau) for x dx/y; those over delta_1 follow from
psi -> -psi.  Near tau = 0,

    int_delta1 dx/y = (1/(2 i sqrt 3)) (F(tau) ln(a tau) + f(tau)),  f(0) = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .numeric import BigComplex, pi_value
from .qseries import PuiseuxSeries

__all__ = [
    "BadC",
    "ConvergenceFailure",
    "OutOfDomain",
    "HypergeomParams",
    "FIRST_KIND",
    "SECOND_KIND",
    "hypergeom_series",
    "picard_fuchs_residual",
    "f_recursion",
    "f_recursion_negated_shift",
    "f_series",
    "qtau_map",
    "tau_of_q",
    "eisenstein_via_periods",
    "hyp2f1",
    "hyp2f1_near_one",
    "period_matrix",
    "legendre_lhs",
    "legendre_check",
    "a0_value",
    "AConstantReport",
    "a_constant_check",
    "a_from_monodromy",
    "schwarz_map",
    "boundary_points",
]


class BadC(ValueError):
    pass


class ConvergenceFailure(ArithmeticError):
    pass


class OutOfDomain(ValueError):
    pass


@dataclass(frozen=True)
class HypergeomParams:
    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.c <= 0 and self.c.denominator == 1:
            raise BadC(f"c = {self.c} is a nonpositive integer")

    def coefficients(self, N: int) -> list[Fraction]:
        """(a)_n (b)_n / ((c)_n n!) for n = 0..N."""
        out = [Fraction(1)]
        for n in range(N):
            out.append(out[-1] * (self.a + n) * (self.b + n) / ((self.c + n) * (n + 1)))
        return out


FIRST_KIND = HypergeomParams(Fraction(1, 6), Fraction(5, 6), 1)
SECOND_KIND = HypergeomParams(Fraction(-1, 6), Fraction(7, 6), 1)


def hypergeom_series(params: HypergeomParams, N: int) -> PuiseuxSeries:
    """F(a, b, c | tau) modulo tau^(N+1)."""
    if N < 0:
        raise ValueError("order must be nonnegative")
    return PuiseuxSeries(params.coefficients(N), N=N)


def _ddt(s: PuiseuxSeries) -> PuiseuxSeries:
    """Ordinary derivative of an integer-lattice power series."""
    cs = [s.coeff(k) * k for k in range(1, s.N + 1)]
    return PuiseuxSeries(cs, N=s.N - 1)


def picard_fuchs_residual(which: str, N: int, series: PuiseuxSeries | None = None) -> PuiseuxSeries:
    """c I + 2 psi I' + (psi^2 - 4) I'' with psi = 4 tau - 2 and I = F(tau),
    c = 5/36 (first kind) or -7/36 (second kind).

    In tau: c F + (2 tau - 1) F_tau + tau (tau - 1) F_tautau.
    """
    if N < 2:
        raise ValueError("order must be at least 2")
    if which in ("first", "first-kind"):
        params, c = FIRST_KIND, Fraction(5, 36)
    elif which in ("second", "second-kind"):
        params, c = SECOND_KIND, Fraction(-7, 36)
    else:
        raise ValueError("which must be first-kind or second-kind")
    F = series if series is not None else hypergeom_series(params, N + 2)
    F1 = _ddt(F)
    F2 = _ddt(F1)
    tau = PuiseuxSeries([0, 1], N=F.N)
    res = F.scale(c) + (tau.scale(2) - 1) * F1 + (tau * tau - tau) * F2
    return res.truncate(min(N + 1, res.prec))


def f_recursion(N: int) -> list[Fraction]:
    """[f_0, ..., f_N] with f_0 = 0 and
    f_{n+1} = (n+1/6)(n+5/6)/(n+1)^2 f_n + p_n (2n+1)/(n+1)^2 - 2 p_{n+1}/(n+1),
    p_n = (1/6)_n (5/6)_n / (n!)^2.

    Obtained by substituting F ln(tau) + f into the hypergeometric equation:
    the operator applied to F ln(tau) leaves F - 2(1 - tau) F'.
    """
    return _f_recursion(N, Fraction(1, 6), Fraction(5, 6))


def f_recursion_negated_shift(N: int) -> list[Fraction]:
    """The same recursion with (n-1/6)(n-5/6) in place of (n+1/6)(n+5/6); agrees only at f_1."""
    return _f_recursion(N, Fraction(-1, 6), Fraction(-5, 6))


def _f_recursion(N: int, r1: Fraction, r2: Fraction) -> list[Fraction]:
    if N < 0:
        raise ValueError("order must be nonnegative")
    p = FIRST_KIND.coefficients(N + 1)
    f = [Fraction(0)]
    for n in range(N):
        m = Fraction(n)
        f.append(
            (m + r1) * (m + r2) / (m + 1) ** 2 * f[n]
            + p[n] * (2 * m + 1) / (m + 1) ** 2
            - 2 * p[n + 1] / (m + 1)
        )
    return f


def f_series(N: int) -> PuiseuxSeries:
    return PuiseuxSeries(f_recursion(N), N=N)


def qtau_map(N: int) -> PuiseuxSeries:
    """q = (tau/432) exp(f/F) modulo tau^(N+1)."""
    if N < 1:
        raise ValueError("order must be at least 1")
    ratio = f_series(N - 1) / hypergeom_series(FIRST_KIND, N - 1)
    tau = PuiseuxSeries.monomial(Fraction(1, 432), 1, N + 1)
    return tau * ratio.exp()


def tau_of_q(N: int) -> PuiseuxSeries:
    """Compositional inverse of qtau_map, modulo q^(N+1)."""
    return qtau_map(N).revert()


def eisenstein_via_periods(N: int):
    """(E2, E4, E6) modulo q^(N+1) from E2 = F(-1/6,7/6,1|tau) F(1/6,5/6,1|tau),
    E4 = F(1/6,5/6,1|tau)^4, E6 = (1 - 2 tau) F(1/6,5/6,1|tau)^6 with tau = tau(q)."""
    t = tau_of_q(N)
    A = hypergeom_series(FIRST_KIND, N).compose(t)
    B = hypergeom_series(SECOND_KIND, N).compose(t)
    A2 = A * A
    A4 = A2 * A2
    E2 = A * B
    E4 = A4
    E6 = (1 - t.scale(2)) * A4 * A2
    return E2, E4, E6


# -- numerics


def _mpf(x: Fraction):
    return mpmath.mpf(x.numerator) / x.denominator


def hyp2f1(params: HypergeomParams, z, prec: int = 256, max_terms: int = 200000) -> mpmath.mpc:
    """Direct summation for |z| <= 0.95 with a geometric tail bound."""
    with mpmath.workprec(prec + 20):
        z = mpmath.mpc(z)
        az = abs(z)
        if az > mpmath.mpf("0.95"):
            raise OutOfDomain(f"|z| = {mpmath.nstr(az, 5)} exceeds 0.95")
        a, b, c = (_mpf(v) for v in (params.a, params.b, params.c))
        eps = mpmath.ldexp(1, -prec - 10)
        term = mpmath.mpc(1)
        total = mpmath.mpc(1)
        bound_ab = abs(a) + abs(b)
        for n in range(max_terms):
            term = term * (a + n) * (b + n) / ((c + n) * (n + 1)) * z
            total += term
            m = n + 1
            if m > abs(c) + 1:
                # every later ratio is at most rho
                rho = az * (m + abs(a)) * (m + abs(b)) / ((m - abs(c)) * (m + 1))
                if rho < 1 and abs(term) * rho / (1 - rho) < eps * max(1, abs(total)):
                    return +total
            if bound_ab == 0 and term == 0:
                return +total
        raise ConvergenceFailure("hypergeometric series did not converge within the iteration cap")


def hyp2f1_near_one(params: HypergeomParams, tau, prec: int = 256) -> mpmath.mpc:
    """F(a, b, a+b | 1 - tau) for small tau by the logarithmic connection series

        Gamma(a+b)/(Gamma(a)Gamma(b)) sum (a)_n (b)_n/(n!)^2
            (2 psi(n+1) - psi(a+n) - psi(b+n) - ln tau) tau^n.
    """
    if params.c != params.a + params.b:
        raise ValueError("the logarithmic connection series needs c = a + b")
    with mpmath.workprec(prec + 20):
        tau = mpmath.mpc(tau)
        if abs(tau) > mpmath.mpf("0.5"):
            raise OutOfDomain("tau must satisfy |tau| <= 1/2")
        a, b = _mpf(params.a), _mpf(params.b)
        eps = mpmath.ldexp(1, -prec - 10)
        ln_tau = mpmath.log(tau)
        pa, pb, p1 = mpmath.digamma(a), mpmath.digamma(b), mpmath.digamma(1)
        coeff = mpmath.mpf(1)
        power = mpmath.mpc(1)
        total = mpmath.mpc(0)
        for n in range(100000):
            term = coeff * power * (2 * p1 - pa - pb - ln_tau)
            total += term
            if n > 2 and abs(term) < eps * max(1, abs(total)) and abs(tau) < 1:
                pre = mpmath.gamma(a + b) / (mpmath.gamma(a) * mpmath.gamma(b))
                return +(pre * total)
            coeff = coeff * (a + n) * (b + n) / ((n + 1) ** 2)
            p1 += mpmath.mpf(1) / (n + 1)
            pa += 1 / (a + n)
            pb += 1 / (b + n)
            power *= tau
        raise ConvergenceFailure("connection series did not converge")


def _pi_sqrt3(prec: int):
    with mpmath.workprec(prec + 20):
        return pi_value(prec + 20).real / mpmath.sqrt(3)


def period_matrix(psi, prec: int = 256):
    """Y = [[int_d1 dx/y, int_d2 dx/y], [int_d1 x dx/y, int_d2 x dx/y]] as mpc values."""
    psi = Fraction(psi)
    if not -2 < psi < 2:
        raise OutOfDomain("psi must lie in (-2, 2)")
    z_minus = (2 - psi) / 4
    z_plus = (psi + 2) / 4
    if max(z_minus, z_plus) > Fraction(95, 100):
        raise OutOfDomain("hypergeometric arguments must stay within 0.95")
    with mpmath.workprec(prec + 20):
        k = _pi_sqrt3(prec)
        j = mpmath.mpc(0, 1)
        zm, zp = _mpf(z_minus), _mpf(z_plus)
        return [
            [j * k * hyp2f1(FIRST_KIND, zm, prec), k * hyp2f1(FIRST_KIND, zp, prec)],
            [j * k * hyp2f1(SECOND_KIND, zm, prec), -k * hyp2f1(SECOND_KIND, zp, prec)],
        ]


def legendre_lhs(psi, prec: int = 256) -> BigComplex:
    """int_d1 dx/y int_d2 x dx/y - int_d2 dx/y int_d1 x dx/y."""
    Y = period_matrix(psi, prec)
    with mpmath.workprec(prec + 20):
        return BigComplex.from_mpc(Y[0][0] * Y[1][1] - Y[0][1] * Y[1][0], prec)


def legendre_check(psi, prec: int = 256, target_sign: int = 1):
    """|LHS - target_sign * 2 pi i|."""
    lhs = legendre_lhs(psi, prec)
    with mpmath.workprec(prec + 20):
        two_pi_i = mpmath.mpc(0, 2 * pi_value(prec + 20).real)
        return abs(lhs.to_mpc() - target_sign * two_pi_i)


def a0_value(prec: int = 256):
    """int_delta2 dx/y at psi = -2, i.e. (pi/sqrt 3) F(1/6, 5/6, 1 | 0)."""
    with mpmath.workprec(prec + 20):
        return _pi_sqrt3(prec) * hyp2f1(FIRST_KIND, 0, prec).real


@dataclass
class AConstantReport:
    taus: list
    limits: list  # L(tau) values (mpc)
    estimates: list  # exp(2 pi i L(tau)/a0)
    deviations: list  # |estimate - 1/432|
    extrapolated: object
    monotone: bool


def _limit_expression(tau, prec):
    """(pi i/sqrt 3) F(1-tau) - (pi/sqrt 3) F(tau) ln(tau)/(2 pi i)."""
    with mpmath.workprec(prec + 20):
        k = _pi_sqrt3(prec)
        pi = pi_value(prec + 20).real
        j = mpmath.mpc(0, 1)
        near = hyp2f1_near_one(FIRST_KIND, tau, prec)
        far = hyp2f1(FIRST_KIND, tau, prec)
        return j * k * near - k * far * mpmath.log(tau) / (2 * pi * j)


def a_constant_check(prec: int = 128, exponents=(4, 6, 8)) -> AConstantReport:
    """Evaluate the limit expression at tau = 10^-k and convert to a = exp(2 pi i L / a0)."""
    if prec < 128:
        raise ValueError("precision must be at least 128 bits")
    taus, Ls, ests, devs = [], [], [], []
    with mpmath.workprec(prec + 20):
        pi = pi_value(prec + 20).real
        a0 = a0_value(prec)
        target = mpmath.mpf(1) / 432
        for k in exponents:
            tau = mpmath.mpf(10) ** (-k)
            L = _limit_expression(tau, prec)
            est = mpmath.exp(2 * pi * mpmath.mpc(0, 1) * L / a0)
            taus.append(tau)
            Ls.append(L)
            ests.append(est)
            devs.append(abs(est - target))
        # L(tau) - L(0) = O(tau log tau); Richardson on the two smallest taus
        extrap = ests[-1]
        if len(ests) >= 2:
            t1, t2 = taus[-2], taus[-1]
            w1, w2 = t1 * mpmath.log(t1), t2 * mpmath.log(t2)
            extrap = (ests[-1] * w1 - ests[-2] * w2) / (w1 - w2)
    monotone = all(devs[i + 1] < devs[i] for i in range(len(devs) - 1))
    return AConstantReport(taus, Ls, ests, devs, extrap, monotone)


def a_from_monodromy(tau=Fraction(3, 10), prec: int = 256, N: int | None = None):
    """Solve int_d1 dx/y = (1/(2 i sqrt 3)) (F ln(a tau) + f) for a at a point where
    F(tau) and F(1 - tau) are both direct sums; f is summed from the exact recursion."""
    tau = Fraction(tau)
    with mpmath.workprec(prec + 20):
        pi = pi_value(prec + 20).real
        sqrt3 = mpmath.sqrt(3)
        j = mpmath.mpc(0, 1)
        t = _mpf(tau)
        d1 = j * pi / sqrt3 * hyp2f1(FIRST_KIND, 1 - t, prec)
        F = hyp2f1(FIRST_KIND, t, prec)
        if N is None:
            N = int(prec * 0.7 / max(1e-9, -mpmath.log(t, 2))) + 20
        fs = f_recursion(N)
        f = mpmath.fsum(_mpf(c) * t**n for n, c in enumerate(fs))
        ln_a_tau = (2 * j * sqrt3 * d1 - f) / F
        return mpmath.exp(ln_a_tau) / t


def schwarz_map(tau, prec: int = 256) -> BigComplex:
    """p(tau) = i F(1/6,5/6,1|1-tau) / F(1/6,5/6,1|tau) for |tau|, |1-tau| < 0.95."""
    with mpmath.workprec(prec + 20):
        if isinstance(tau, BigComplex):
            tau = tau.to_mpc()
        elif isinstance(tau, Fraction):
            tau = _mpf(tau)
        tau = mpmath.mpc(tau)
        if not (abs(tau) < mpmath.mpf("0.95") and abs(1 - tau) < mpmath.mpf("0.95")):
            raise OutOfDomain("Schwarz map evaluated only for |tau| < 0.95 and |1 - tau| < 0.95")
        val = mpmath.mpc(0, 1) * hyp2f1(FIRST_KIND, 1 - tau, prec) / hyp2f1(FIRST_KIND, tau, prec)
        return BigComplex.from_mpc(val, prec)


def boundary_points(n: int = 50, prec: int = 64):
    """Sample images of the arc tau = 1/2 + i x and the real segment 0.05 <= tau <= 1/2.

    Rows are (segment, tau_re, tau_im, p_re, p_im) as floats.
    """
    rows = []
    xmax = 0.8  # keeps |tau| and |1 - tau| below 0.95
    for k in range(n + 1):
        x = -xmax + 2 * xmax * k / n
        tau = mpmath.mpc(0.5, x)
        p = schwarz_map(tau, prec).to_mpc()
        rows.append(("arc", 0.5, x, float(p.real), float(p.imag)))
    for k in range(n + 1):
        t = 0.06 + (0.5 - 0.06) * k / n
        p = schwarz_map(mpmath.mpc(t, 0), prec).to_mpc()
        rows.append(("imaginary-axis", t, 0.0, float(p.real), float(p.imag)))
    return rows
