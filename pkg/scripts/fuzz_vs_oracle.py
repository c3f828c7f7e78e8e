"""Randomized cross-check of the solver and enumerator against the brute-force oracle.

Usage: python3 scripts/fuzz_vs_oracle.py [trials] [max_n] [seed]
Exits nonzero on the first disagreement and prints the offending instance.
"""
import random
import sys

from kfvd import (
    enumerate_minimal,
    gen_random,
    oracle_enumerate_minimal,
    oracle_min,
    serialize_digraph,
    solve,
)


def main() -> int:
    trials = int(sys.argv[1]) if len(sys.argv) > 1 else 500
    max_n = int(sys.argv[2]) if len(sys.argv) > 2 else 8
    seed = int(sys.argv[3]) if len(sys.argv) > 3 else 0
    rng = random.Random(seed)
    for trial in range(trials):
        n = rng.randint(2, max_n)
        p = rng.choice((0.1, 0.2, 0.3, 0.5, 0.7))
        graph = gen_random(n, p, rng.randrange(1 << 30))
        solution, _ = solve(graph)
        reference = oracle_min(graph)
        if solution.size != reference.size:
            print(f"size mismatch: solver {solution.size} oracle {reference.size}")
            print(serialize_digraph(graph))
            return 1
        ours = enumerate_minimal(graph).as_set_of_sets()
        theirs = oracle_enumerate_minimal(graph).as_set_of_sets()
        if ours != theirs:
            print(f"family mismatch: solver {len(ours)} sets, oracle {len(theirs)}")
            print(serialize_digraph(graph))
            return 1
        if trial % 100 == 99:
            print(f"{trial + 1} trials clean")
    print(f"done: {trials} trials, no disagreements")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
