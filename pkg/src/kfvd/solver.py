"""Branch-and-reduce search for minimum knot-free vertex deletion.

The search decides, vertex by vertex, which vertices end up as sinks of the
final knot-free graph; the deletion set is then the union of the chosen sinks'
out-neighborhoods at branch time, plus whatever the all-semi-decided leaf rule
contributes.  Every branch records its measure drop and is audited against the
known per-rule worst-case minima.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .digraph import Digraph, InternalInvariantError, is_knot_free
from .reach import (
    Instance,
    apply_update,
    candidate_sinks,
    closed_reach,
    drop_value,
    in_reach,
    in_reach_all,
    out_reach,
    surviving_set,
)


@dataclass(frozen=True)
class Solution:
    size: int
    deletion_set: frozenset[int]
    sink_set: frozenset[int]
    provenance: str  # solver | oracle | enumerator


@dataclass(frozen=True)
class DropViolation:
    subroutine: str
    kind: str
    expected_min: int
    observed: int
    fingerprint: str


@dataclass
class SearchStats:
    nodes: int = 0
    leaves: int = 0
    sub1_sink: int = 0
    sub1_nonsink: int = 0
    sub2: int = 0
    sub3: int = 0
    sub4: int = 0
    rr1: int = 0
    rr2: int = 0
    rr3: int = 0
    forced_sink: int = 0
    max_depth: int = 0
    drop_violations: list[DropViolation] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "nodes": self.nodes,
            "leaves": self.leaves,
            "sub1_sink": self.sub1_sink,
            "sub1_nonsink": self.sub1_nonsink,
            "sub2": self.sub2,
            "sub3": self.sub3,
            "sub4": self.sub4,
            "rr1": self.rr1,
            "rr2": self.rr2,
            "rr3": self.rr3,
            "forced_sink": self.forced_sink,
            "max_depth": self.max_depth,
            "drop_violations": len(self.drop_violations),
        }


# One trace entry per branch: (depth, subroutine, vertex, kind, measure_before,
# measure_after, cost_added).
TraceEntry = tuple[int, str, int, str, int, int, int]


@dataclass
class _Ctx:
    check_invariants: bool = True
    on_leaf: Optional[Callable[[frozenset[int], frozenset[int]], None]] = None
    trace: Optional[list[TraceEntry]] = None


@dataclass(frozen=True)
class _Outcome:
    cost: int
    deletion: frozenset[int]
    sinks: frozenset[int]
    sink_nplus: tuple[tuple[int, frozenset[int]], ...]
    rr1_residue: frozenset[int]


@dataclass(frozen=True)
class _Branch:
    subroutine: str
    kind: str
    vertex: int
    expected_min: int
    exact: bool
    sink: Optional[int]
    non_sinks: frozenset[int]
    cost: int
    nplus: frozenset[int]
    counter: str


def _fingerprint(inst: Instance) -> str:
    arcs = ";".join(f"{u}>{v}" for u, v in sorted(inst.graph.arcs))
    pots = ";".join(f"{v}:{p}" for v, p in sorted(inst.potential.items()))
    return f"arcs[{arcs}]phi[{pots}]"


def audit_drop(
    stats: SearchStats,
    subroutine: str,
    kind: str,
    expected_min: int,
    observed: int,
    fingerprint: str,
    exact: bool = False,
) -> None:
    """Record a violation when a branch drops less measure than its rule guarantees.

    Branch kinds flagged `exact` must drop exactly the expected amount.  Never
    aborts the search.
    """
    bad = observed != expected_min if exact else observed < expected_min
    if bad:
        stats.drop_violations.append(
            DropViolation(subroutine, kind, expected_min, observed, fingerprint)
        )


def _reduce(inst: Instance, stats: SearchStats) -> Instance:
    """Exhaustively strip sources and sinks.

    A source can never be part of a knot and never needs deleting; a sink
    certifies that everything able to reach it is already safe, so its whole
    closed_reach region goes.  Lowest id first, sources before sinks, repeated
    to a fixpoint.  The solution accumulator is unaffected.
    """
    graph = inst.graph
    potential = dict(inst.potential)
    while True:
        sources = graph.sources()
        if sources:
            x = sources[0]
            graph = graph.remove_vertices({x})
            del potential[x]
            stats.rr2 += 1
            continue
        sinks = graph.sinks()
        if sinks:
            x = sinks[0]
            region = in_reach(graph, x)  # equals closed_reach: x has no out-arcs
            graph = graph.remove_vertices(region)
            for v in region:
                del potential[v]
            stats.rr3 += 1
            continue
        break
    if graph is inst.graph:
        return inst
    return Instance(graph, potential)


def _check_branch_node_bounds(inst: Instance, und: frozenset[int], psi: dict, reach) -> None:
    """Bounds that must hold at every node where no vertex has drop >= 15."""
    g = inst.graph
    for u in sorted(und):
        if psi[u] > 14:
            raise InternalInvariantError(
                f"drop value {psi[u]} of vertex {u} above 14 at a low-drop node"
            )
        if len(g.neighbors(u) & und) > 2:
            raise InternalInvariantError(f"vertex {u} has >2 undecided neighbors at a low-drop node")
        region = g.out_neighbors(u) | reach[u]
        if len(out_reach(inst, u, reach) - region) > 2:
            raise InternalInvariantError(f"vertex {u} has >2 out_reach escapees at a low-drop node")
        if len(candidate_sinks(inst, u, reach)) > 2:
            raise InternalInvariantError(f"vertex {u} has >2 candidate sinks at a low-drop node")


def _prune_dominated(g: Digraph, pool: list[int]) -> list[int]:
    """Drop every candidate whose out-neighborhood contains another candidate's.

    A candidate with a strictly larger out-neighborhood is redundant: whenever
    it works as a sink, the smaller one works at least as well.  On exact ties
    the lower id survives.
    """
    kept = []
    for s in pool:
        dominated = False
        for t in pool:
            if t == s:
                continue
            ns, nt = g.out_neighbors(s), g.out_neighbors(t)
            if nt < ns or (nt == ns and t < s):
                dominated = True
                break
        if not dominated:
            kept.append(s)
    return kept


def _search(
    inst: Instance,
    depth: int,
    stats: SearchStats,
    ctx: _Ctx,
    acc_del: frozenset[int],
    acc_sinks: frozenset[int],
) -> _Outcome:
    stats.nodes += 1
    if depth > stats.max_depth:
        stats.max_depth = depth
    inst = _reduce(inst, stats)
    g = inst.graph
    if not g.vertices:
        stats.leaves += 1
        if ctx.on_leaf:
            ctx.on_leaf(acc_del, acc_sinks)
        return _Outcome(0, frozenset(), frozenset(), (), frozenset())
    und = inst.undecided()
    if not und:
        # All live vertices are committed non-sinks in a source/sink-free
        # graph: every one of them must be deleted.
        stats.rr1 += 1
        stats.leaves += 1
        residue = frozenset(g.vertices)
        if ctx.on_leaf:
            ctx.on_leaf(acc_del | residue, acc_sinks)
        return _Outcome(len(residue), residue, frozenset(), (), residue)

    reach = in_reach_all(g)
    psi = {x: drop_value(inst, x, reach) for x in und}
    parent_measure = inst.measure()

    high = sorted(x for x in und if psi[x] >= 15)
    if high:
        x = high[0]
        nplus = g.out_neighbors(x)
        plan = [
            _Branch("sub1", "sink", x, 15, False, x, frozenset(), len(nplus), nplus, "sub1_sink"),
            _Branch("sub1", "nonsink", x, 3, True, None, frozenset([x]), 0, frozenset(), "sub1_nonsink"),
        ]
        return _run_branches(inst, plan, depth, stats, ctx, acc_del, acc_sinks, parent_measure)

    if ctx.check_invariants:
        _check_branch_node_bounds(inst, und, psi, reach)

    x = min(und, key=lambda v: (-len(g.neighbors(v) & und), v))
    surv = surviving_set(inst, x)
    nplus_x = g.out_neighbors(x)

    if not surv:
        cands = sorted(candidate_sinks(inst, x, reach))
        if not cands:
            return _forced_sink(inst, x, depth, stats, ctx, acc_del, acc_sinks, parent_measure)
        plan = [_Branch("sub2", "sink-x", x, 9, False, x, frozenset(), len(nplus_x), nplus_x, "sub2")]
        for i, s in enumerate(cands, start=1):
            np = g.out_neighbors(s)
            plan.append(_Branch("sub2", f"sink-s{i}", s, 12, False, s, frozenset(), len(np), np, "sub2"))
        return _run_branches(inst, plan, depth, stats, ctx, acc_del, acc_sinks, parent_measure)

    if g.neighbors(x) & und:
        y = min(surv)
        pool = sorted(out_reach(inst, y, reach))
        if not pool:
            return _forced_sink(inst, x, depth, stats, ctx, acc_del, acc_sinks, parent_measure)
        pool = _prune_dominated(g, pool)
        if not 1 <= len(pool) <= 2:
            raise InternalInvariantError(f"candidate pool of size {len(pool)} after dominance pruning")
        sub = "sub3-single" if len(pool) == 1 else "sub3-double"
        floor = 9 if len(pool) == 1 else 10
        plan = [_Branch(sub, "sink-x", x, floor, False, x, frozenset(), len(nplus_x), nplus_x, "sub3")]
        for i, s in enumerate(pool, start=1):
            np = g.out_neighbors(s)
            earlier = frozenset(pool[: i - 1])
            plan.append(_Branch(sub, f"sink-s{i}", s, floor, False, s, earlier, len(np), np, "sub3"))
        return _run_branches(inst, plan, depth, stats, ctx, acc_del, acc_sinks, parent_measure)

    y = min(surv)
    pool = sorted(out_reach(inst, y, reach))
    if not pool:
        return _forced_sink(inst, x, depth, stats, ctx, acc_del, acc_sinks, parent_measure)
    s = pool[0]
    np = g.out_neighbors(s)
    plan = [
        _Branch("sub4", "sink-x", x, 9, False, x, frozenset(), len(nplus_x), nplus_x, "sub4"),
        _Branch("sub4", "sink-s", s, 10, False, s, frozenset(), len(np), np, "sub4"),
    ]
    return _run_branches(inst, plan, depth, stats, ctx, acc_del, acc_sinks, parent_measure)


def _run_branches(
    inst: Instance,
    plan: list[_Branch],
    depth: int,
    stats: SearchStats,
    ctx: _Ctx,
    acc_del: frozenset[int],
    acc_sinks: frozenset[int],
    parent_measure: int,
) -> _Outcome:
    best: Optional[_Outcome] = None
    for br in plan:
        result = apply_update(inst, sink=br.sink, non_sinks=br.non_sinks)
        child_inst = result.instance
        child_measure = child_inst.measure()
        audit_drop(
            stats,
            br.subroutine,
            br.kind,
            br.expected_min,
            parent_measure - child_measure,
            _fingerprint(inst),
            exact=br.exact,
        )
        if child_measure >= parent_measure:
            raise InternalInvariantError("measure did not strictly decrease across a branch")
        setattr(stats, br.counter, getattr(stats, br.counter) + 1)
        if ctx.trace is not None:
            ctx.trace.append(
                (depth, br.subroutine, br.vertex, br.kind, parent_measure, child_measure, br.cost)
            )
        child = _search(
            child_inst,
            depth + 1,
            stats,
            ctx,
            acc_del | br.nplus,
            acc_sinks | ({br.sink} if br.sink is not None else frozenset()),
        )
        if br.sink is None:
            outcome = child
        else:
            outcome = _Outcome(
                br.cost + child.cost,
                br.nplus | child.deletion,
                frozenset({br.sink}) | child.sinks,
                ((br.sink, br.nplus),) + child.sink_nplus,
                child.rr1_residue,
            )
        if best is None or outcome.cost < best.cost:
            best = outcome
    assert best is not None
    return best


def _forced_sink(
    inst: Instance,
    x: int,
    depth: int,
    stats: SearchStats,
    ctx: _Ctx,
    acc_del: frozenset[int],
    acc_sinks: frozenset[int],
    parent_measure: int,
) -> _Outcome:
    """x has no viable alternative sink: commit it without branching."""
    nplus = inst.graph.out_neighbors(x)
    result = apply_update(inst, sink=x)
    child_inst = result.instance
    child_measure = child_inst.measure()
    if child_measure >= parent_measure:
        raise InternalInvariantError("measure did not strictly decrease across a forced sink")
    stats.forced_sink += 1
    if ctx.trace is not None:
        ctx.trace.append((depth, "forced", x, "sink", parent_measure, child_measure, len(nplus)))
    child = _search(child_inst, depth + 1, stats, ctx, acc_del | nplus, acc_sinks | {x})
    return _Outcome(
        len(nplus) + child.cost,
        nplus | child.deletion,
        frozenset({x}) | child.sinks,
        ((x, nplus),) + child.sink_nplus,
        child.rr1_residue,
    )


def run_search(
    graph: Digraph,
    *,
    check_invariants: bool = True,
    on_leaf: Optional[Callable[[frozenset[int], frozenset[int]], None]] = None,
    trace: Optional[list[TraceEntry]] = None,
) -> tuple[_Outcome, SearchStats]:
    """Run the full search from a fresh all-undecided instance.

    Shared engine behind solve() and the minimal-set enumerator; on_leaf is
    called with the accumulated (deletion set, sink set) at every leaf.
    """
    stats = SearchStats()
    ctx = _Ctx(check_invariants=check_invariants, on_leaf=on_leaf, trace=trace)
    outcome = _search(Instance.fresh(graph), 0, stats, ctx, frozenset(), frozenset())
    return outcome, stats


def solve(
    graph: Digraph,
    *,
    check_invariants: bool = True,
    trace: Optional[list[TraceEntry]] = None,
) -> tuple[Solution, SearchStats]:
    """Minimum knot-free vertex deletion size with a witness set.

    The witness is re-verified: it must leave the graph knot-free, have
    exactly the reported size, and decompose into the chosen sinks'
    out-neighborhoods plus the all-semi-decided leaf residue.
    """
    outcome, stats = run_search(graph, check_invariants=check_invariants, trace=trace)
    solution = Solution(outcome.cost, outcome.deletion, outcome.sinks, "solver")
    if len(solution.deletion_set) != solution.size:
        raise InternalInvariantError("witness size disagrees with reported optimum")
    if not is_knot_free(graph.remove_vertices(solution.deletion_set)):
        raise InternalInvariantError("witness deletion set does not make the graph knot-free")
    rebuilt = frozenset().union(*(np for _, np in outcome.sink_nplus), outcome.rr1_residue)
    if rebuilt != solution.deletion_set:
        raise InternalInvariantError(
            "witness does not decompose into sink out-neighborhoods plus leaf residue"
        )
    return solution, stats
