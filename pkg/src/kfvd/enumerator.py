"""Enumeration of all inclusion-minimal knot-free vertex deletion sets.

Walks the complete decision tree of the branching solver (identical reduction
rules, branch rules and tie-breaking, no cost-based pruning), collects the
deletion set at every leaf, and filters the collected family down to the
inclusion-minimal members.
"""
from __future__ import annotations

from dataclasses import dataclass

from .digraph import Digraph, InternalInvariantError, is_knot_free
from .solver import run_search


@dataclass(frozen=True)
class MinimalFamily:
    sets: tuple[frozenset[int], ...]
    leaf_count: int

    def as_set_of_sets(self) -> frozenset[frozenset[int]]:
        return frozenset(self.sets)


def filter_minimal(family: list[frozenset[int]]) -> list[frozenset[int]]:
    """Keep the inclusion-minimal members, sorted by (size, ids).

    Assumes the input family contains every inclusion-minimal solution, so a
    non-minimal member is always witnessed by a smaller kept member.
    """
    distinct = sorted(set(family), key=lambda s: (len(s), sorted(s)))
    kept: list[frozenset[int]] = []
    for s in distinct:
        if not any(m < s for m in kept if len(m) < len(s)):
            kept.append(s)
    return kept


def enumerate_minimal(graph: Digraph, *, check_invariants: bool = True) -> MinimalFamily:
    """All inclusion-minimal knot-free vertex deletion sets of the graph.

    Every leaf's accumulated set must already be a valid deletion set; a leaf
    failing that check is a solver bug, not an input problem.
    """
    collected: list[frozenset[int]] = []

    def on_leaf(deletion: frozenset[int], sinks: frozenset[int]) -> None:
        collected.append(deletion)

    _, stats = run_search(graph, check_invariants=check_invariants, on_leaf=on_leaf)
    for s in collected:
        if not is_knot_free(graph.remove_vertices(s)):
            raise InternalInvariantError(f"leaf deletion set {sorted(s)} leaves a knot")
    return MinimalFamily(tuple(filter_minimal(collected)), stats.leaves)
