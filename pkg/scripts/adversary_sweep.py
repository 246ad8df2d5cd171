"""Surviving witnesses as a function of the query budget, for both adversaries."""
import argparse
import itertools
import math

from wisopt.instances import GroundPoint

from wisopt.verify import (adversary_membership_run, adversary_run,
                           make_membership_budget_algorithm, make_query_budget_algorithm)


def make_targeted_algorithm(queries, m):
    """Spend each query on c = 1 on a witness's support, -1 elsewhere."""
    targets = [tuple(A) + tuple(B)
               for A in itertools.combinations(range(2 * m), m + 1)
               for B in itertools.combinations(range(2 * m, 4 * m), m - 1)]

    def algorithm(oracle, w, cmp):
        for support in targets[:queries]:
            c = [1 if j in support else -1 for j in range(oracle.n)]
            oracle(c)
        return GroundPoint.zero(oracle.n)
    return algorithm


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--m", type=int, nargs="+", default=[2, 3])
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--targeted", action="store_true",
                        help="aim each linear query at one witness instead of random c")
    args = parser.parse_args()

    for m in args.m:
        threshold = math.comb(2 * m, m + 1)
        print(f"lower_bound m={m}  witnesses={math.comb(2 * m, m + 1) * math.comb(2 * m, m - 1)}"
              f"  threshold={threshold}")
        for q in range(threshold + 3):
            alg = (make_targeted_algorithm(q, m) if args.targeted
                   else make_query_budget_algorithm(q, args.seed))
            t = adversary_run(alg, m)
            print(f"  queries={q:>3}  union_bound={t.union_bound:>4}  "
                  f"surviving={t.surviving_y:>4}  fooled={t.fooled}")
        threshold = math.comb(2 * m, m)
        print(f"membership m={m}  threshold={threshold}")
        for q in range(threshold + 1):
            t = adversary_membership_run(make_membership_budget_algorithm(q), m)
            print(f"  queries={q:>3}  surviving={t.surviving_y:>4}  fooled={t.fooled}")


if __name__ == "__main__":
    main()
