"""Print the a-constant estimates exp(2 pi i L / a0) for tau = 10^-k."""

import argparse

import mpmath

from quasimod.periods import a_constant_check

if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--prec", type=int, default=128)
    ap.add_argument("--exponents", type=int, nargs="+", default=[4, 6, 8, 10, 12])
    args = ap.parse_args()
    rep = a_constant_check(args.prec, tuple(args.exponents))
    for t, a, d in zip(rep.taus, rep.estimates, rep.deviations):
        print(f"{mpmath.nstr(t, 3):>8}  {mpmath.nstr(a.real, 15)}  {mpmath.nstr(d, 3)}")
    print("1/432 =", mpmath.nstr(mpmath.mpf(1) / 432, 15))
