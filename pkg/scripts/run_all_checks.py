"""Run every exact identity check through the CLI and exit nonzero on any mismatch."""

import argparse
import sys

from quasimod.cli import main

if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--order", type=int, default=30)
    args = ap.parse_args()
    sys.exit(main(["verify", "all", "--order", str(args.order)]))
