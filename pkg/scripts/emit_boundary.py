"""Write Schwarz-map images of the fundamental-domain boundary to a CSV file."""

import argparse
import csv

from quasimod.periods import boundary_points

if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("out")
    ap.add_argument("--n", type=int, default=50)
    ap.add_argument("--prec", type=int, default=64)
    args = ap.parse_args()
    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["segment", "tau_re", "tau_im", "p_re", "p_im"])
        w.writerows(boundary_points(args.n, args.prec))
