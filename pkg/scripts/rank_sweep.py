"""Certified rank distribution of the three solvers on seeded random instances."""
import argparse
from collections import Counter

import numpy as np

from wisopt.instances import Instance, ObjectiveTable, random_instance
from wisopt.monoid import g_bound, r_bound
from wisopt.solver import SOLVERS
from wisopt.verify import certify_rank


def sweep(a, count, n_max, spread, seed):
    rng = np.random.default_rng(seed)
    ranks = {name: Counter() for name in SOLVERS}
    for _ in range(count):
        inst = random_instance(rng, a, int(rng.integers(1, n_max + 1)))
        if spread is not None:
            size = inst.weights.max_value() + 1
            inst = Instance(inst.system, inst.weights,
                            ObjectiveTable(rng.integers(0, spread, size=size).tolist()))
        for name, solver in SOLVERS.items():
            lin, cmp, _ = inst.oracles()
            ranks[name][certify_rank(solver(lin, inst.weights, cmp), inst).rank] += 1
    return ranks


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--tuple", type=int, nargs="+", action="append",
                        help="repeatable; default (2,3) (1,2) (1,2,4) (3,5)")
    parser.add_argument("--count", type=int, default=200)
    parser.add_argument("--n", type=int, default=12)
    parser.add_argument("--spread", type=int, default=None,
                        help="draw f values from [0, spread) instead of the default range")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    tuples = [tuple(t) for t in args.tuple] if args.tuple else [(2, 3), (1, 2), (1, 2, 4), (3, 5)]
    for a in tuples:
        ranks = sweep(a, args.count, args.n, args.spread, args.seed)
        print(f"a={a}  r_bound={r_bound(a)}  g_bound={g_bound(a)}")
        for name, hist in ranks.items():
            dist = " ".join(f"{r}:{c}" for r, c in sorted(hist.items()))
            print(f"  {name:<12} max={max(hist)}  {dist}")


if __name__ == "__main__":
    main()
