"""Sample random Fay configurations and tabulate verdicts per genus.

Points are drawn either from the real locus (vertices and slanted chains)
or from all of Gamma.  Output: one CSV row per genus and sampling mode.
"""

import argparse
import csv
import random
import sys
from collections import Counter

from tropfay.curve import build_graph, curve_data
from tropfay.fay import FayInput, fay_check
from tropfay.sampling import generic_invariants, graph_point, half_integer_beta, rational_vec


def sample(g, rng, real_only, trials):
    counts = Counter()
    for _ in range(trials):
        cd = curve_data(generic_invariants(rng, g))
        G = build_graph(cd)
        pts = tuple(graph_point(rng, G, real_only=real_only) for _ in range(4))
        w = tuple(tuple(rng.randint(-1, 1) for _ in range(g)) for _ in range(4))
        v = fay_check(FayInput(cd, pts, rational_vec(rng, g, 40), half_integer_beta(rng, g), w))
        counts[v.status] += 1
    return counts


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--genera", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--trials", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    out = csv.writer(sys.stdout)
    out.writerow(["g", "points", "trials", "Holds", "SignAmbiguous", "Violated"])
    for g in args.genera:
        for real_only in (True, False):
            c = sample(g, random.Random(args.seed * 1000 + g), real_only, args.trials)
            out.writerow([g, "real" if real_only else "all", args.trials,
                          c["Holds"], c["SignAmbiguous"], c["Violated"]])


if __name__ == "__main__":
    main()
