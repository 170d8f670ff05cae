"""Write CSV data for every figure panel into a directory (default: figures/)."""
import argparse
import sys

from kerrswap.cli import main

if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="figures")
    parser.add_argument("--samples", type=int, default=3000)
    args = parser.parse_args()
    sys.exit(main(["figures", "all", "--out", args.out, "--samples", str(args.samples)]))
