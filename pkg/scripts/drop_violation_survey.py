"""Survey where the per-branch measure-drop audit fires across a random corpus.

The audit compares each branch's observed quarter-unit drop against the
published per-subroutine minimum.  Some two-vertex deletion regions (a bare
2-cycle, or a sink vertex whose only companion is already semi-decided) drop
only 8 quarter-units where the table demands 9; this script tallies every
shape that occurs so the discrepancy stays visible instead of averaged away.

Usage: python3 scripts/drop_violation_survey.py [seeds_per_cell]
"""
import sys
from collections import Counter

from kfvd import gen_random, solve


def main() -> None:
    seeds = int(sys.argv[1]) if len(sys.argv) > 1 else 25
    shapes: Counter = Counter()
    examples: dict = {}
    instances = violations = 0
    for n in range(4, 11):
        for p in (0.15, 0.3, 0.5):
            for seed in range(seeds):
                instances += 1
                _, stats = solve(gen_random(n, p, seed))
                for v in stats.drop_violations:
                    violations += 1
                    key = (v.subroutine, v.kind, v.expected_min, v.observed)
                    shapes[key] += 1
                    examples.setdefault(key, v.fingerprint)
    print(f"{instances} instances, {violations} audit violations")
    for key, count in sorted(shapes.items()):
        sub, kind, expected, observed = key
        print(f"  {sub}/{kind}: expected >= {expected}, observed {observed} ({count}x)")
        print(f"    e.g. {examples[key]}")


if __name__ == "__main__":
    main()
