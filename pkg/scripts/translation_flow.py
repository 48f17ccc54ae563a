"""Run the theta-driven tau solution and print the (Q, W) trajectory next to
the straight line Z0 + t lambda it corresponds to."""

import argparse
from fractions import Fraction

from tropfay.curve import curve_data
from tropfay.rational import fmt_vec, vadd, vscale
from tropfay.taudyn import quasi_for, solve, translation_flow_check
from tropfay.udtoda import SpectralInvariants


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--C", nargs="+", default=["11", "5", "2", "0"])
    ap.add_argument("--Z0", nargs="+", default=None)
    ap.add_argument("--steps", type=int, default=12)
    args = ap.parse_args(argv)
    cd = curve_data(SpectralInvariants.of([Fraction(c) for c in args.C]))
    Z0 = tuple(Fraction(z) for z in args.Z0) if args.Z0 else (Fraction(0),) * cd.g
    print("K =", [fmt_vec(r) for r in cd.K], " lambda =", fmt_vec(cd.lambda_vec),
          " (a, b, c) =", fmt_vec(quasi_for(cd, Z0).as_tuple()))
    for t, _, st, ok in solve(cd, Z0, args.steps):
        Z = vadd(Z0, vscale(t, cd.lambda_vec))
        print(f"t={t:3d}  Z={fmt_vec(Z)}  Q={fmt_vec(st.Q)}  W={fmt_vec(st.W)}  direct={'ok' if ok else 'MISMATCH'}")
    print("translation flow exact:", translation_flow_check(cd, Z0, args.steps))


if __name__ == "__main__":
    main()
