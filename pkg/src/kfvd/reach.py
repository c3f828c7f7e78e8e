"""Potential bookkeeping and reachability sets for the branching solver.

Every live vertex holds a potential: 4 quarter-units while it is still a
candidate to end up as a sink ("undecided"), 1 quarter-unit once the current
branch has committed it to being a non-sink ("semi-decided").  All measure
arithmetic is exact integer arithmetic in quarter-units; no floats anywhere.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from .digraph import Digraph, InternalInvariantError

UNDECIDED = 4
SEMI_DECIDED = 1


@dataclass(frozen=True)
class Instance:
    """A digraph plus per-vertex potential in quarter-units ({4, 1})."""

    graph: Digraph
    potential: dict[int, int]

    def __post_init__(self):
        if set(self.potential) != set(self.graph.vertices):
            raise ValueError("potential keys must equal the live vertex set")
        bad = {v: p for v, p in self.potential.items() if p not in (UNDECIDED, SEMI_DECIDED)}
        if bad:
            raise ValueError(f"potentials must be 4 or 1 quarter-units, got {bad}")

    @classmethod
    def fresh(cls, graph: Digraph) -> "Instance":
        """Top-level instance: every vertex undecided."""
        return cls(graph, {v: UNDECIDED for v in graph.vertices})

    def measure(self) -> int:
        return sum(self.potential.values())

    def undecided(self) -> frozenset[int]:
        return frozenset(v for v, p in self.potential.items() if p == UNDECIDED)

    def is_undecided(self, v: int) -> bool:
        return self.potential[v] == UNDECIDED


@dataclass(frozen=True)
class UpdateResult:
    instance: Instance
    deleted: frozenset[int]
    demoted: frozenset[int]
    measure_drop: int


def in_reach(d: Digraph, v: int) -> frozenset[int]:
    """Vertices with a directed path to v once v's out-neighbors are removed.

    Always contains v itself.
    """
    if v not in d:
        raise ValueError(f"unknown vertex {v}")
    blocked = d.out_neighbors(v)
    seen = {v}
    frontier = [v]
    while frontier:
        u = frontier.pop()
        for w in d.in_neighbors(u):
            if w not in seen and w not in blocked:
                seen.add(w)
                frontier.append(w)
    return frozenset(seen)


def in_reach_all(d: Digraph) -> dict[int, frozenset[int]]:
    """in_reach for every live vertex; one shared table per search node."""
    return {v: in_reach(d, v) for v in d.vertices}


def out_reach(
    inst: Instance, v: int, reach: Optional[Mapping[int, frozenset[int]]] = None
) -> frozenset[int]:
    """Undecided vertices u such that v lies in in_reach(u).

    Contains v itself whenever v is undecided.
    """
    if v not in inst.graph:
        raise ValueError(f"unknown vertex {v}")
    d = inst.graph
    if reach is None:
        return frozenset(
            u for u in d.vertices if inst.is_undecided(u) and v in in_reach(d, u)
        )
    return frozenset(u for u in d.vertices if inst.is_undecided(u) and v in reach[u])


def closed_reach(d: Digraph, v: int) -> frozenset[int]:
    """The region deleted when v becomes a sink: out-neighbors plus in_reach."""
    return d.out_neighbors(v) | in_reach(d, v)


def drop_value(
    inst: Instance, x: int, reach: Optional[Mapping[int, frozenset[int]]] = None
) -> int:
    """Measure drop (quarter-units) incurred when undecided x is made a sink."""
    if x not in inst.graph:
        raise ValueError(f"unknown vertex {x}")
    if not inst.is_undecided(x):
        raise ValueError(f"vertex {x} is semi-decided; drop is defined for undecided vertices")
    d = inst.graph
    region = d.out_neighbors(x) | (reach[x] if reach is not None else in_reach(d, x))
    deleted_potential = sum(inst.potential[v] for v in region)
    demotions = out_reach(inst, x, reach) - region
    return deleted_potential + 3 * len(demotions)


def surviving_set(inst: Instance, x: int) -> frozenset[int]:
    """Out-neighbors of x whose only undecided in-neighbor is x itself.

    These vertices cannot belong to any minimal solution in which x is not a
    sink, hence they survive in every such branch.
    """
    if x not in inst.graph:
        raise ValueError(f"unknown vertex {x}")
    if not inst.is_undecided(x):
        raise ValueError(f"vertex {x} is semi-decided")
    d = inst.graph
    return frozenset(
        u
        for u in d.out_neighbors(x)
        if {w for w in d.in_neighbors(u) if inst.is_undecided(w)} == {x}
    )


def candidate_sinks(
    inst: Instance, x: int, reach: Optional[Mapping[int, frozenset[int]]] = None
) -> frozenset[int]:
    """Union of out_reach over the out-neighbors of x.

    If x is not a sink of the final knot-free graph, some vertex of this set
    must be.  Sanity-checked: never contains x, only undecided vertices, and
    is contained in in-neighbors(x) union out_reach(x).
    """
    if x not in inst.graph:
        raise ValueError(f"unknown vertex {x}")
    if not inst.is_undecided(x):
        raise ValueError(f"vertex {x} is semi-decided")
    d = inst.graph
    result = frozenset().union(
        *(out_reach(inst, y, reach) for y in d.out_neighbors(x))
    ) if d.out_neighbors(x) else frozenset()
    if x in result:
        raise InternalInvariantError(f"candidate sinks of {x} contain {x}")
    if not result <= inst.undecided():
        raise InternalInvariantError(f"candidate sinks of {x} contain semi-decided vertices")
    if not result <= (d.in_neighbors(x) | out_reach(inst, x, reach)):
        raise InternalInvariantError(
            f"candidate sinks of {x} escape in-neighbors(x) | out_reach(x)"
        )
    return result


def apply_update(
    inst: Instance,
    sink: Optional[int] = None,
    non_sinks: Iterable[int] = (),
) -> UpdateResult:
    """Commit one branch decision and return the updated instance.

    With a sink s: delete the whole closed_reach region of s, then demote every
    surviving member of out_reach(s) to semi-decided.  Every surviving member
    of non_sinks is demoted as well; members that were deleted or already
    semi-decided are skipped.  The original instance is untouched.
    """
    ns = frozenset(non_sinks)
    unknown = ns - inst.graph.vertices
    if unknown:
        raise ValueError(f"non-sink vertices not live: {sorted(unknown)}")
    before = inst.measure()
    potential = dict(inst.potential)
    demoted: set[int] = set()
    if sink is not None:
        if sink not in inst.graph:
            raise ValueError(f"unknown vertex {sink}")
        if not inst.is_undecided(sink):
            raise ValueError(f"vertex {sink} is semi-decided and cannot become a sink")
        region = closed_reach(inst.graph, sink)
        demotable = out_reach(inst, sink) - region
        graph = inst.graph.remove_vertices(region)
        for v in region:
            del potential[v]
        for v in demotable:
            if potential[v] == UNDECIDED:
                potential[v] = SEMI_DECIDED
                demoted.add(v)
        deleted = region
    else:
        graph = inst.graph
        deleted = frozenset()
    for v in ns - deleted:
        if potential[v] == UNDECIDED:
            potential[v] = SEMI_DECIDED
            demoted.add(v)
    updated = Instance(graph, potential)
    return UpdateResult(updated, deleted, frozenset(demoted), before - updated.measure())
