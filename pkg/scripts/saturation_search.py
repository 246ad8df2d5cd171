"""For each small primitive tuple, find the least l such that every uniform
lambda = (k,)*p with l <= k <= max(a) + 2 is saturated, and compare it with max(a).

Saturation is not monotone in lambda (tiny lambda are trivially saturated, while
(3,5) fails at (3,4)), so the search is for the start of the saturated tail."""
import argparse

from wisopt.monoid import is_saturated, primitive_tuples


def saturated_tail_start(a, horizon):
    start = None
    for l in range(horizon, -1, -1):
        if not is_saturated(a, (l,) * a.p):
            break
        start = l
    return start


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-entry", type=int, default=9)
    parser.add_argument("--max-len", type=int, default=3)
    args = parser.parse_args()

    below = total = 0
    print(f"{'tuple':>14} {'max':>4} {'tail':>6}")
    for a in primitive_tuples(args.max_entry, args.max_len):
        l = saturated_tail_start(a, a.max + 2)
        total += 1
        below += l is not None and l < a.max
        print(f"{str(a):>14} {a.max:>4} {str(l):>6}")
    print(f"\n{total} tuples; {below} have a saturated tail starting below max(a)")


if __name__ == "__main__":
    main()
