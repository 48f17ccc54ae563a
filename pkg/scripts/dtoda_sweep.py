"""Distance between the discrete Toda lattice at scale eps and the
ultra-discrete orbit, plus the characteristic-polynomial errors."""

import argparse
from fractions import Fraction

import mpmath

from tropfay.dtoda import ud_char_consistency, ud_trajectory_compare
from tropfay.udtoda import UDState


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--Q", nargs="+", default=["0", "1", "3"])
    ap.add_argument("--W", nargs="+", default=["2", "4", "5"])
    ap.add_argument("--eps", nargs="+", default=["1/2", "1/5", "1/10", "1/20", "1/50"])
    ap.add_argument("--steps", type=int, default=10)
    ap.add_argument("--dps", type=int, default=50)
    args = ap.parse_args(argv)
    s = UDState.of([Fraction(x) for x in args.Q], [Fraction(x) for x in args.W])
    rep = ud_trajectory_compare(s, args.eps, args.steps, args.dps)
    chars = ud_char_consistency(s, args.eps, args.dps)
    print(f"{'eps':>6} {'sup traj err':>14} {'max C err':>12}")
    for e in rep.sup:
        print(f"{str(e):>6} {mpmath.nstr(rep.sup[e], 4):>14} {mpmath.nstr(max(chars[e]), 4):>12}")


if __name__ == "__main__":
    main()
