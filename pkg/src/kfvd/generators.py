"""Instance generators: adversarial disjoint triangles and seeded random digraphs."""
from __future__ import annotations

import random

from .digraph import Digraph


def gen_triangles(k: int) -> Digraph:
    """k disjoint directed 3-cycles: block i uses vertices (3i-2, 3i-1, 3i).

    Each block is one knot; the optimum deletes exactly one vertex per block,
    and the solver's decision tree has exactly 3^k leaves on this family.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    arcs = []
    for i in range(1, k + 1):
        a, b, c = 3 * i - 2, 3 * i - 1, 3 * i
        arcs += [(a, b), (b, c), (c, a)]
    return Digraph(range(1, 3 * k + 1), arcs)


def gen_random(n: int, p: float, seed: int) -> Digraph:
    """Seeded random digraph: each ordered pair (u, v), u != v, kept with probability p.

    Reproducible by construction: a Mersenne Twister (random.Random) seeded
    with `seed`, consumed in row-major order over ordered pairs (u ascending,
    then v ascending, skipping u == v) with one random() draw per pair.  The
    same (n, p, seed) yields the identical arc set on any platform.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be in [0, 1], got {p}")
    rng = random.Random(seed)
    arcs = []
    for u in range(1, n + 1):
        for v in range(1, n + 1):
            if u == v:
                continue
            if rng.random() < p:
                arcs.append((u, v))
    return Digraph(range(1, n + 1), arcs)
