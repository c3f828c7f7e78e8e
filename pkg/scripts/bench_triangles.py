"""Leaf growth of the search tree on the disjoint-triangle family.

Each extra triangle multiplies the leaf count by exactly 3, giving the
worst-case branching profile a concrete, checkable shape.

Usage: python3 scripts/bench_triangles.py [k_max]
"""
import math
import sys
from time import perf_counter

from kfvd import gen_triangles, solve


def main() -> None:
    k_max = int(sys.argv[1]) if len(sys.argv) > 1 else 8
    prev = None
    print(f"{'k':>3} {'n':>4} {'leaves':>9} {'nodes':>9} {'ratio':>7} {'log/n':>8} {'ms':>9}")
    for k in range(1, k_max + 1):
        graph = gen_triangles(k)
        t0 = perf_counter()
        _, stats = solve(graph, check_invariants=False)
        ms = (perf_counter() - t0) * 1000
        n = len(graph.vertices)
        ratio = f"{stats.leaves / prev:.3f}" if prev else "-"
        print(
            f"{k:>3} {n:>4} {stats.leaves:>9} {stats.nodes:>9} {ratio:>7}"
            f" {math.log(stats.leaves) / n:>8.4f} {ms:>9.2f}"
        )
        prev = stats.leaves


if __name__ == "__main__":
    main()
