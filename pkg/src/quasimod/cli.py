"""Command-line front end for the package.

Exit codes: 0 on success, 1 on a verification mismatch, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import mpmath

from .numeric import rational_str
from .qseries import PuiseuxSeries

__all__ = ["RunConfig", "build_parser", "dispatch", "main"]


@dataclass(frozen=True)
class RunConfig:
    order: int = 10
    precision_bits: int = 256
    output: str = "pretty"
    cache_dir: Path | None = None

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("--order must be at least 1")
        if self.precision_bits < 64:
            raise ValueError("--prec must be at least 64")
        if self.output not in ("pretty", "json"):
            raise ValueError("output must be pretty or json")

    @property
    def json(self) -> bool:
        return self.output == "json"


class Mismatch(Exception):
    """A verification failed; carries the first differing coefficient."""

    def __init__(self, what, exponent=None, got=None, expected=None):
        self.what = what
        self.exponent = exponent
        self.got = got
        self.expected = expected
        super().__init__(self.describe())

    def describe(self) -> str:
        if self.exponent is None:
            return f"{self.what}: mismatch"
        return f"{self.what}: first difference at q^{self.exponent}: {self.got} vs {self.expected}"


# -- output helpers


def _fmt(v) -> str:
    if isinstance(v, Fraction):
        return rational_str(v)
    return str(v)


def _emit(cfg: RunConfig, pretty: str, payload) -> None:
    if cfg.json:
        print(json.dumps(payload, sort_keys=False))
    else:
        print(pretty)


def _emit_series(cfg: RunConfig, s: PuiseuxSeries) -> None:
    _emit(cfg, s.pretty(), s.to_dict())


def _cached_series(cfg: RunConfig, key: tuple, compute) -> PuiseuxSeries:
    """Series keyed by (subcommand, parameters, order), stored in canonical JSON."""
    if cfg.cache_dir is None:
        return compute()
    name = hashlib.sha256(json.dumps([str(k) for k in key]).encode()).hexdigest()[:32]
    path = Path(cfg.cache_dir) / f"{name}.json"
    if path.exists():
        return PuiseuxSeries.from_json(path.read_text())
    s = compute()
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(s.to_json())
    tmp.replace(path)
    return s


def _check_series(what, got: PuiseuxSeries, expected: PuiseuxSeries) -> None:
    diff = got.first_difference(expected)
    if diff is not None:
        e, a, b = diff
        raise Mismatch(what, _fmt(e), _fmt(a), _fmt(b))


def _check_zero(what, residual: PuiseuxSeries) -> None:
    for e, c in residual.items():
        if c:
            raise Mismatch(what, _fmt(e), _fmt(c), "0")


# -- qexp


def _cmd_qexp(cfg: RunConfig, args) -> int:
    N = cfg.order
    if args.kind == "eisenstein":
        from .eisenstein import eisenstein_E

        if args.k not in (2, 4, 6):
            raise _Usage("--k must be 2, 4 or 6")
        s = _cached_series(cfg, ("qexp", "eisenstein", args.k, N), lambda: eisenstein_E(args.k, N))
    elif args.kind == "theta":
        from .theta import theta_constant

        if args.which not in (2, 3, 4):
            raise _Usage("--which must be 2, 3 or 4")
        s = _cached_series(cfg, ("qexp", "theta", args.which, N), lambda: theta_constant(args.which, N + 1))
    else:
        from .theta import eta_product

        power = args.power

        def compute():
            p = eta_product(N, power)
            shift = PuiseuxSeries.monomial(1, Fraction(power, 24), N + 2)
            return (p.subs_monomial(1).on_lattice(24) * shift).truncate(N + 1)

        s = _cached_series(cfg, ("qexp", "eta", power, N), compute)
    _emit_series(cfg, s)
    return 0


# -- derham, gm


def _cmd_derham(cfg: RunConfig, args) -> int:
    from .derham import reduce
    from .sympoly import ParamPoly

    try:
        C = ParamPoly.parse(args.poly)
    except Exception as exc:  # sympy raises a zoo of exception types
        raise _Usage(f"cannot parse polynomial {args.poly!r}: {exc}") from exc
    r = reduce(C)
    _emit(cfg, f"alpha = {r.alpha}\nbeta = {r.beta}", {"alpha": str(r.alpha), "beta": str(r.beta)})
    return 0


def _cmd_gm(cfg: RunConfig, args) -> int:
    from . import gaussmanin as gm

    if args.what == "matrix":
        if args.chart == "ramanujan":
            A = gm.gm_matrix()
            if A != gm.gm_closed_form():
                raise Mismatch("Gauss-Manin matrix vs closed form")
        else:
            A = gm.halphen_pullback_report().matrix
            if A != gm.halphen_closed_form():
                raise Mismatch("pulled-back matrix vs Halphen closed form")
        payload = {f"A{j + 1}{k + 1}": str(A[j, k]) for j in range(2) for k in range(2)}
        _emit(cfg, str(A), payload)
    else:
        if args.chart == "ramanujan":
            V = gm.ramanujan_field()
            if V != gm.RAMANUJAN:
                raise Mismatch("Ramanujan field")
        else:
            V = gm.halphen_pullback_report().field
            if V != gm.HALPHEN:
                raise Mismatch("Halphen field")
        _emit(cfg, str(V), {"components": [str(c) for c in V]})
    return 0


# -- verify


def _verify_ramanujan(N):
    from .eisenstein import eisenstein_E, solve_ramanujan
    from .periods import eisenstein_via_periods

    scales = (Fraction(1, 12), Fraction(1, 12), Fraction(1, 216))
    ts = solve_ramanujan(N)
    divs = [eisenstein_E(w, N) for w in (2, 4, 6)]
    per = eisenstein_via_periods(N)
    for w, t, e, p, c in zip((2, 4, 6), ts, divs, per, scales):
        _check_series(f"Ramanujan solution vs E{w}", t, e.scale(c))
        _check_series(f"periods vs E{w}", p.truncate(N + 1), e)
    return f"E2, E4, E6 agree three ways modulo q^{N + 1}"


def _verify_halphen(N):
    from .theta import darboux_residual, halphen_residuals, halphen_solution

    us = halphen_solution(max(N, 2))
    for i, r in enumerate(halphen_residuals(us)):
        _check_zero(f"Halphen equation {i + 1}", r)
    _check_zero("Darboux equation", darboux_residual(us))
    return f"Darboux-Halphen system holds modulo q^{max(N, 2)}"


def _verify_theta_eisenstein(N):
    from .theta import theta_eisenstein_identities

    reports = theta_eisenstein_identities(max(N, 4))
    for r in reports:
        if not r.holds:
            e, a, b = r.first_difference
            raise Mismatch(r.name, _fmt(e), _fmt(a), _fmt(b))
    return "; ".join(str(r) for r in reports)


def _verify_delta_product(N):
    from .theta import delta_product_check

    r = delta_product_check(N)
    if not r.holds:
        e, a, b = r.first_difference
        raise Mismatch(r.name, _fmt(e), _fmt(a), _fmt(b))
    return str(r)


def _verify_picard_fuchs(N):
    from .periods import picard_fuchs_residual

    n = max(N, 2)
    for which in ("first-kind", "second-kind"):
        _check_zero(f"Picard-Fuchs residual ({which})", picard_fuchs_residual(which, n))
    return f"both Picard-Fuchs residuals vanish modulo tau^{n + 1}"


def _verify_ohyama(N):
    from .gaussmanin import ohyama_tangency_check
    from .theta import ohyama_eta_series

    rep = ohyama_tangency_check()
    if not rep.zero_modulo_F:
        raise Mismatch("Ohyama tangency: dF(V) modulo F")
    series = ohyama_eta_series(N)
    for i, r in enumerate(series.residuals):
        _check_zero(f"Ohyama equation {i + 1}", r)
    _check_zero("Ohyama F", series.F_residual)
    return f"{rep}; eta-quotient series satisfy the system and F = 0 modulo q^{N}"


VERIFIERS = {
    "ramanujan": _verify_ramanujan,
    "halphen": _verify_halphen,
    "theta-eisenstein": _verify_theta_eisenstein,
    "delta-product": _verify_delta_product,
    "picard-fuchs": _verify_picard_fuchs,
    "ohyama": _verify_ohyama,
}


def _cmd_verify(cfg: RunConfig, args) -> int:
    names = list(VERIFIERS) if args.identity == "all" else [args.identity]
    results = []
    failed = False
    for name in names:
        try:
            msg = VERIFIERS[name](cfg.order)
            results.append({"identity": name, "ok": True, "detail": msg})
        except Mismatch as exc:
            failed = True
            results.append(
                {
                    "identity": name,
                    "ok": False,
                    "detail": exc.what,
                    "exponent": exc.exponent,
                    "got": exc.got,
                    "expected": exc.expected,
                }
            )
    lines = []
    for r in results:
        if r["ok"]:
            lines.append(f"OK {r['identity']}: {r['detail']}")
        else:
            m = Mismatch(r["detail"], r.get("exponent"), r.get("got"), r.get("expected"))
            lines.append(f"MISMATCH {r['identity']}: {m.describe()}")
    _emit(cfg, "\n".join(lines), results)
    return 1 if failed else 0


# -- genfun


def _cmd_genfun(cfg: RunConfig, args) -> int:
    from . import genfun

    N = cfg.order
    kind = args.kind
    if kind == "j":
        s = _cached_series(cfg, ("genfun", "j", N), lambda: genfun.j_function(N))
    elif kind == "tau":
        from .theta import delta_series

        s = _cached_series(cfg, ("genfun", "tau", N), lambda: delta_series(N))
        if [int(s.coeff(n)) for n in range(1, N + 1)] != genfun.tau_eta(N):
            raise Mismatch("tau from (E4^3 - E6^2)/1728 vs eta product")
    elif kind == "dijkgraaf":
        if args.g not in (2, 3):
            raise _Usage("--g must be 2 or 3 for dijkgraaf")
        s = _cached_series(cfg, ("genfun", "dijkgraaf", args.g, N), lambda: genfun.dijkgraaf_F(args.g, N))
    elif kind == "yau-zaslow":
        s = _cached_series(cfg, ("genfun", "yau-zaslow", N), lambda: genfun.yau_zaslow(N))
    elif kind == "bryan-leung":
        if args.g < 0:
            raise _Usage("--g must be nonnegative")
        s = _cached_series(cfg, ("genfun", "bryan-leung", args.g, N), lambda: genfun.bryan_leung(args.g, N).series)
    else:
        s = _cached_series(cfg, ("genfun", "eta11", N), lambda: genfun.modularity_eta_product(N))
    _emit_series(cfg, s)
    return 0


# -- weierstrass, ff


def _cmd_weierstrass(cfg: RunConfig, args) -> int:
    from .weierstrass import eisenstein_modular

    if args.k < 1:
        raise _Usage("--k must be at least 1")
    G = eisenstein_modular(args.k)
    _emit(cfg, str(G), {"k": args.k, "weight": G.weight, "poly": str(G)})
    return 0


def _cmd_ff(cfg: RunConfig, args) -> int:
    from . import arith

    try:
        if args.what == "count":
            curve = arith.parse_curve(args.curve)
            n, a = arith.count_points(curve, args.p)
            _emit(cfg, f"N_{args.p} = {n}\na_{args.p} = {a}", {"p": args.p, "N": n, "a": a})
        else:
            s = arith.sigma_k(args.p, args.k)
            _emit(cfg, f"sigma_{args.k}({args.p}) = {_fmt(s)}", {"p": args.p, "k": args.k, "sigma": _fmt(s)})
    except (arith.NotPrime, arith.PrimeTooSmall) as exc:
        raise _Usage(f"--p: {exc}") from exc
    except ValueError as exc:
        raise _Usage(str(exc)) from exc
    return 0


# -- periods


def _parse_complex(text: str, flag: str):
    try:
        return mpmath.mpmathify(text.replace("i", "j"))
    except (ValueError, TypeError) as exc:
        raise _Usage(f"{flag}: cannot parse {text!r}") from exc


def _cmd_periods(cfg: RunConfig, args) -> int:
    from . import periods

    prec = cfg.precision_bits
    digits = max(15, int(prec * 0.30103) - 5)
    try:
        if args.what == "schwarz":
            with mpmath.workprec(prec + 20):
                p = periods.schwarz_map(_parse_complex(args.tau, "--tau"), prec)
            _emit(
                cfg,
                f"p(tau) = {mpmath.nstr(p.to_mpc(), digits)}",
                {"tau": args.tau, "p": p.to_hex()},
            )
        elif args.what == "legendre":
            with mpmath.workprec(prec + 20):
                try:
                    psi = Fraction(args.psi)
                except ValueError as exc:
                    raise _Usage(f"--psi: cannot parse {args.psi!r} as a rational") from exc
                lhs = periods.legendre_lhs(psi, prec)
                dev_plus = periods.legendre_check(psi, prec, 1)
                dev_minus = periods.legendre_check(psi, prec, -1)
            text = (
                f"LHS = {mpmath.nstr(lhs.to_mpc(), digits)}\n"
                f"|LHS - 2 pi i| = {mpmath.nstr(dev_plus, 5)}\n"
                f"|LHS + 2 pi i| = {mpmath.nstr(dev_minus, 5)}"
            )
            _emit(
                cfg,
                text,
                {"psi": args.psi, "lhs": lhs.to_hex(), "dev_plus": mpmath.nstr(dev_plus, 5),
                 "dev_minus": mpmath.nstr(dev_minus, 5)},
            )
        elif args.what == "aconst":
            rep = periods.a_constant_check(max(prec, 128))
            with mpmath.workprec(max(prec, 128)):
                est = rep.extrapolated
                rel = abs(est - mpmath.mpf(1) / 432) * 432
            lines = [
                f"tau = {mpmath.nstr(t, 3)}: a = {mpmath.nstr(e, 12)}, |a - 1/432| = {mpmath.nstr(d, 3)}"
                for t, e, d in zip(rep.taus, rep.estimates, rep.deviations)
            ]
            lines.append(f"extrapolated a = {mpmath.nstr(est, 15)}; 1/432 = {mpmath.nstr(mpmath.mpf(1) / 432, 15)}")
            _emit(
                cfg,
                "\n".join(lines),
                {"estimates": [mpmath.nstr(e, 20) for e in rep.estimates],
                 "extrapolated": mpmath.nstr(est, 20), "relative_error": mpmath.nstr(rel, 5)},
            )
            if rel > mpmath.mpf("1e-4"):
                raise Mismatch("a-constant vs 1/432", None)
        else:
            rows = periods.boundary_points(args.n, max(64, min(prec, 128)))
            if args.emit == "csv":
                w = csv.writer(sys.stdout, lineterminator="\n")
                w.writerow(["segment", "tau_re", "tau_im", "p_re", "p_im"])
                for r in rows:
                    w.writerow([r[0]] + [repr(v) for v in r[1:]])
            else:
                print(json.dumps([list(r) for r in rows]))
    except periods.OutOfDomain as exc:
        raise _Usage(str(exc)) from exc
    return 0


# -- parser


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


def _global_flags(parser, suppress: bool):
    d = argparse.SUPPRESS if suppress else None
    parser.add_argument("--order", type=int, default=d if suppress else 10, help="series truncation order")
    parser.add_argument("--prec", type=int, default=d if suppress else 256, help="precision in bits")
    parser.add_argument("--json", action="store_true", default=d if suppress else False, help="JSON output")
    parser.add_argument("--cache-dir", default=d, help="directory for cached series")


def build_parser() -> argparse.ArgumentParser:
    root = _Parser(prog="quasimod", description="Quasi-modular forms from Gauss-Manin connections.")
    _global_flags(root, suppress=False)
    common = _Parser(add_help=False)
    _global_flags(common, suppress=True)
    sub = root.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def leaf(parent, name, **kw):
        return parent.add_parser(name, parents=[common], **kw)

    qexp = sub.add_parser("qexp").add_subparsers(dest="kind", required=True, parser_class=_Parser)
    p = leaf(qexp, "eisenstein")
    p.add_argument("--k", type=int, required=True, help="weight: 2, 4 or 6")
    p = leaf(qexp, "theta")
    p.add_argument("--which", type=int, default=3)
    p = leaf(qexp, "eta")
    p.add_argument("--power", type=int, default=1)

    derham = sub.add_parser("derham").add_subparsers(dest="what", required=True, parser_class=_Parser)
    p = leaf(derham, "reduce")
    p.add_argument("poly")

    gm = sub.add_parser("gm").add_subparsers(dest="what", required=True, parser_class=_Parser)
    for name in ("matrix", "field"):
        p = leaf(gm, name)
        p.add_argument("--chart", choices=("ramanujan", "halphen"), default="ramanujan")

    verify = sub.add_parser("verify").add_subparsers(dest="identity", required=True, parser_class=_Parser)
    for name in list(VERIFIERS) + ["all"]:
        leaf(verify, name)

    genfun = sub.add_parser("genfun").add_subparsers(dest="kind", required=True, parser_class=_Parser)
    for name in ("j", "tau", "yau-zaslow", "eta11"):
        leaf(genfun, name)
    p = leaf(genfun, "dijkgraaf")
    p.add_argument("--g", type=int, default=2)
    p = leaf(genfun, "bryan-leung")
    p.add_argument("--g", type=int, default=1)

    ws = sub.add_parser("weierstrass").add_subparsers(dest="what", required=True, parser_class=_Parser)
    p = leaf(ws, "gk")
    p.add_argument("--k", type=int, required=True)

    ff = sub.add_parser("ff").add_subparsers(dest="what", required=True, parser_class=_Parser)
    p = leaf(ff, "count")
    p.add_argument("--curve", required=True)
    p.add_argument("--p", type=int, required=True)
    p = leaf(ff, "sigma")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, default=10)

    per = sub.add_parser("periods").add_subparsers(dest="what", required=True, parser_class=_Parser)
    p = leaf(per, "schwarz")
    p.add_argument("--tau", required=True)
    p = leaf(per, "legendre")
    p.add_argument("--psi", default="0")
    leaf(per, "aconst")
    p = leaf(per, "boundary")
    p.add_argument("--emit", choices=("csv", "json"), default="csv")
    p.add_argument("--n", type=int, default=50)
    return root


COMMANDS = {
    "qexp": _cmd_qexp,
    "derham": _cmd_derham,
    "gm": _cmd_gm,
    "verify": _cmd_verify,
    "genfun": _cmd_genfun,
    "weierstrass": _cmd_weierstrass,
    "ff": _cmd_ff,
    "periods": _cmd_periods,
}


def dispatch(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        try:
            cfg = RunConfig(
                order=args.order,
                precision_bits=args.prec,
                output="json" if args.json else "pretty",
                cache_dir=Path(args.cache_dir) if args.cache_dir else None,
            )
        except ValueError as exc:
            raise _Usage(str(exc)) from exc
        return COMMANDS[args.command](cfg, args)
    except _Usage as exc:
        print(f"quasimod: error: {exc}", file=sys.stderr)
        return 2
    except Mismatch as exc:
        print(exc.describe())
        return 1


def main(argv=None) -> int:
    return dispatch(sys.argv[1:] if argv is None else argv)
