"""Brute-force ground truth: optimal size and the full minimal-solution family.

Deliberately dumb.  Enumerates vertex subsets by nondecreasing size, then
lexicographically, so outputs are canonical and diffable.
"""
from __future__ import annotations

import itertools

from .digraph import Digraph, is_knot_free
from .enumerator import MinimalFamily
from .solver import Solution

MIN_CAP = 20
ENUMERATE_CAP = 16


class CapExceededError(ValueError):
    """Instance too large for exhaustive enumeration without an explicit override."""


def oracle_min(graph: Digraph, cap: int = MIN_CAP, override: bool = False) -> Solution:
    """Smallest knot-free deletion set by exhaustive subset search.

    Ties broken by lexicographically smallest sorted id sequence.
    """
    n = len(graph.vertices)
    if n > cap and not override:
        raise CapExceededError(f"{n} vertices exceeds the cap of {cap}")
    verts = sorted(graph.vertices)
    for k in range(n + 1):
        for combo in itertools.combinations(verts, k):
            residual = graph.remove_vertices(combo)
            if is_knot_free(residual):
                sinks = frozenset(residual.sinks())
                return Solution(k, frozenset(combo), sinks, "oracle")
    raise AssertionError("unreachable: deleting all vertices is always knot-free")


def oracle_enumerate_minimal(
    graph: Digraph, cap: int = ENUMERATE_CAP, override: bool = False
) -> MinimalFamily:
    """All inclusion-minimal knot-free deletion sets by exhaustive enumeration.

    Scanning subsets by nondecreasing size lets minimality be decided against
    the minimal members found so far.
    """
    n = len(graph.vertices)
    if n > cap and not override:
        raise CapExceededError(f"{n} vertices exceeds the cap of {cap}")
    verts = sorted(graph.vertices)
    minimal: list[frozenset[int]] = []
    for k in range(n + 1):
        for combo in itertools.combinations(verts, k):
            s = frozenset(combo)
            if any(m < s for m in minimal):
                continue
            if is_knot_free(graph.remove_vertices(s)):
                minimal.append(s)
    return MinimalFamily(tuple(minimal), len(minimal))
