"""Directed graphs with stable 1-based vertex ids, knot detection and solution checking.

A *knot* is a strongly connected component of size at least two with no arc
leaving it.  A digraph is knot-free exactly when every vertex has a directed
path to some sink; both criteria are computed and cross-checked.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional


class ParseError(ValueError):
    """Malformed instance file; carries the offending line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class InternalInvariantError(RuntimeError):
    """A cross-checked internal invariant failed; indicates a bug, not bad input."""


class Digraph:
    """Immutable simple digraph.  No self-loops, no parallel arcs.

    Vertex ids are arbitrary positive ints and stay stable under deletion:
    removing vertices never renumbers the survivors, so solution sets always
    refer to the original input ids.
    """

    __slots__ = ("_out", "_in", "_vertices")

    def __init__(self, vertices: Iterable[int], arcs: Iterable[tuple[int, int]]):
        verts = frozenset(vertices)
        out: dict[int, set[int]] = {v: set() for v in verts}
        inn: dict[int, set[int]] = {v: set() for v in verts}
        for u, v in arcs:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if u not in out or v not in out:
                raise ValueError(f"arc ({u}, {v}) has an unknown endpoint")
            out[u].add(v)
            inn[v].add(u)
        self._vertices = verts
        self._out = {v: frozenset(s) for v, s in out.items()}
        self._in = {v: frozenset(s) for v, s in inn.items()}

    @property
    def vertices(self) -> frozenset[int]:
        return self._vertices

    def __contains__(self, v: int) -> bool:
        return v in self._vertices

    def __len__(self) -> int:
        return len(self._vertices)

    def out_neighbors(self, v: int) -> frozenset[int]:
        return self._out[v]

    def in_neighbors(self, v: int) -> frozenset[int]:
        return self._in[v]

    def neighbors(self, v: int) -> frozenset[int]:
        return self._out[v] | self._in[v]

    @property
    def arcs(self) -> frozenset[tuple[int, int]]:
        return frozenset((u, v) for u in self._vertices for v in self._out[u])

    @property
    def num_arcs(self) -> int:
        return sum(len(self._out[v]) for v in self._vertices)

    def sinks(self) -> list[int]:
        return sorted(v for v in self._vertices if not self._out[v])

    def sources(self) -> list[int]:
        return sorted(v for v in self._vertices if not self._in[v])

    def remove_vertices(self, drop: Iterable[int]) -> "Digraph":
        """Induced subgraph on the remaining vertices; this graph is untouched."""
        gone = frozenset(drop)
        unknown = gone - self._vertices
        if unknown:
            raise ValueError(f"unknown vertex ids: {sorted(unknown)}")
        keep = self._vertices - gone
        g = Digraph.__new__(Digraph)
        g._vertices = keep
        g._out = {v: self._out[v] & keep for v in keep}
        g._in = {v: self._in[v] & keep for v in keep}
        return g

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self._vertices == other._vertices and self._out == other._out

    def __hash__(self) -> int:
        return hash((self._vertices, frozenset(self._out.items())))

    def __repr__(self) -> str:
        return f"Digraph(n={len(self._vertices)}, m={self.num_arcs})"


@dataclass(frozen=True)
class KnotReport:
    """The knots of a digraph: pairwise-disjoint SCCs of size >= 2 with no out-arc."""

    knots: tuple[frozenset[int], ...]

    def __bool__(self) -> bool:
        return bool(self.knots)


@dataclass(frozen=True)
class VerificationReport:
    knot_free: bool
    minimal: Optional[bool] = None
    witness_knot: Optional[frozenset[int]] = None
    redundant_vertex: Optional[int] = None


def parse_digraph(text: str) -> Digraph:
    """Parse the line-oriented instance format.

    ``c ...`` lines are comments; exactly one ``p kfvd <n> <m>`` header must
    precede the ``e <u> <v>`` arc lines, of which there are exactly ``m``.
    Errors report the offending line number.
    """
    n = m = None
    arcs: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    line_no = 0
    for line_no, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            if n is not None:
                raise ParseError(line_no, "duplicate header")
            if len(parts) != 4 or parts[1] != "kfvd":
                raise ParseError(line_no, f"malformed header: {raw.strip()!r}")
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError(line_no, f"malformed header: {raw.strip()!r}") from None
            if n < 0 or m < 0:
                raise ParseError(line_no, "negative count in header")
        elif parts[0] == "e":
            if n is None:
                raise ParseError(line_no, "arc line before header")
            if len(parts) != 3:
                raise ParseError(line_no, f"malformed arc line: {raw.strip()!r}")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError(line_no, f"malformed arc line: {raw.strip()!r}") from None
            if not (1 <= u <= n) or not (1 <= v <= n):
                raise ParseError(line_no, f"arc endpoint out of range [1, {n}]: ({u}, {v})")
            if u == v:
                raise ParseError(line_no, f"self-loop at vertex {u}")
            if (u, v) in seen:
                raise ParseError(line_no, f"duplicate arc ({u}, {v})")
            if len(arcs) >= m:
                raise ParseError(line_no, f"more than the declared {m} arcs")
            seen.add((u, v))
            arcs.append((u, v))
        else:
            raise ParseError(line_no, f"unknown line type: {raw.strip()!r}")
    if n is None:
        raise ParseError(max(line_no, 1), "missing header")
    if len(arcs) != m:
        raise ParseError(max(line_no, 1), f"declared {m} arcs but found {len(arcs)}")
    return Digraph(range(1, n + 1), arcs)


def serialize_digraph(d: Digraph) -> str:
    """Inverse of parse_digraph for graphs whose vertices are 1..n (arcs sorted by (u, v))."""
    n = max(d.vertices, default=0)
    lines = [f"p kfvd {n} {d.num_arcs}"]
    lines.extend(f"e {u} {v}" for u, v in sorted(d.arcs))
    return "\n".join(lines) + "\n"


def scc_partition(d: Digraph) -> list[frozenset[int]]:
    """Strongly connected components (iterative Tarjan), sorted by minimum vertex id."""
    index: dict[int, int] = {}
    lowlink: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    comps: list[frozenset[int]] = []
    counter = 0

    for root in sorted(d.vertices):
        if root in index:
            continue
        work: list[tuple[int, iter]] = [(root, iter(sorted(d.out_neighbors(root))))]
        index[root] = lowlink[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = lowlink[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(sorted(d.out_neighbors(w)))))
                    advanced = True
                    break
                if w in on_stack:
                    lowlink[v] = min(lowlink[v], index[w])
            if advanced:
                continue
            work.pop()
            if lowlink[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == v:
                        break
                comps.append(frozenset(comp))
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[v])
    comps.sort(key=min)
    return comps


def find_knots(d: Digraph) -> KnotReport:
    knots = []
    for comp in scc_partition(d):
        if len(comp) < 2:
            continue
        if all(d.out_neighbors(v) <= comp for v in comp):
            knots.append(comp)
    return KnotReport(tuple(knots))


def _every_vertex_reaches_a_sink(d: Digraph) -> bool:
    sinks = d.sinks()
    reached = set(sinks)
    frontier = list(sinks)
    while frontier:
        v = frontier.pop()
        for u in d.in_neighbors(v):
            if u not in reached:
                reached.add(u)
                frontier.append(u)
    return len(reached) == len(d.vertices)


def is_knot_free(d: Digraph) -> bool:
    """True iff the graph has no knot.

    Computed both as "no SCC of size >= 2 without out-arcs" and as "every
    vertex reaches a sink"; a disagreement between the two is a bug.
    """
    by_knots = not find_knots(d)
    by_sinks = _every_vertex_reaches_a_sink(d)
    if by_knots != by_sinks:
        raise InternalInvariantError(
            f"knot criterion ({by_knots}) disagrees with sink-reachability ({by_sinks}) on {d!r}"
        )
    return by_knots


def verify_solution(d: Digraph, solution: Iterable[int], check_minimal: bool = False) -> VerificationReport:
    """Check that deleting `solution` leaves the graph knot-free.

    With check_minimal, additionally check that no single vertex of the
    solution can be dropped.
    """
    s = frozenset(solution)
    unknown = s - d.vertices
    if unknown:
        raise ValueError(f"unknown vertex ids in solution: {sorted(unknown)}")
    residual = d.remove_vertices(s)
    report = find_knots(residual)
    if report:
        return VerificationReport(knot_free=False, witness_knot=report.knots[0])
    if not check_minimal:
        return VerificationReport(knot_free=True)
    for v in sorted(s):
        if is_knot_free(d.remove_vertices(s - {v})):
            return VerificationReport(knot_free=True, minimal=False, redundant_vertex=v)
    return VerificationReport(knot_free=True, minimal=True)
