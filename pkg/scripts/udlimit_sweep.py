"""Root, a-period and b-period errors of the scaled hyperelliptic curve
along an eps sweep."""

import argparse
import time
from fractions import Fraction

import mpmath

from tropfay.curve import curve_data
from tropfay.hyperell import (a_periods, b_period_limits, basis_change, identity_error,
                              mat_error, root_errors, scaled_curve, segment_checks)
from tropfay.udtoda import SpectralInvariants


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--C", nargs="+", default=["11", "5", "2", "0"])
    ap.add_argument("--eps", nargs="+", default=["1/5", "1/10", "1/20", "1/40"])
    ap.add_argument("--precision", type=int, default=60)
    args = ap.parse_args(argv)
    inv = SpectralInvariants.of([Fraction(c) for c in args.C])
    Kt = basis_change(curve_data(inv)).K_tilde
    print("K~ =", [[str(x) for x in r] for r in Kt])
    print(f"{'eps':>6} {'roots':>10} {'a-period':>10} {'b-period':>10} {'segments':>10} {'sec':>6}")
    for e in args.eps:
        t0 = time.perf_counter()
        sc = scaled_curve(inv, Fraction(e), args.precision)
        r = max(root_errors(sc).values())
        a = identity_error(a_periods(sc))
        b = mat_error(b_period_limits(sc), Kt)
        s = max(c.rel_error for c in segment_checks(sc))
        print(f"{e:>6} {mpmath.nstr(r, 3):>10} {mpmath.nstr(a, 3):>10} {mpmath.nstr(b, 3):>10} "
              f"{mpmath.nstr(s, 3):>10} {time.perf_counter() - t0:6.1f}")


if __name__ == "__main__":
    main()
