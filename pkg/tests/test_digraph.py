import pytest
from hypothesis import given, settings

from kfvd import (
    Digraph,
    ParseError,
    find_knots,
    is_knot_free,
    parse_digraph,
    scc_partition,
    serialize_digraph,
    verify_solution,
)
from kfvd.generators import gen_random, gen_triangles

from conftest import digraphs


class TestParse:
    def test_two_cycle(self):
        g = parse_digraph("p kfvd 2 2\ne 1 2\ne 2 1\n")
        assert g.vertices == frozenset({1, 2})
        assert g.arcs == frozenset({(1, 2), (2, 1)})

    def test_triangle(self):
        g = parse_digraph("p kfvd 3 3\ne 1 2\ne 2 3\ne 3 1\n")
        assert g.arcs == frozenset({(1, 2), (2, 3), (3, 1)})

    def test_comments_and_blanks_ignored(self):
        g = parse_digraph("c hello\n\np kfvd 2 1\nc mid\ne 1 2\n")
        assert g.arcs == frozenset({(1, 2)})

    def test_empty_graph(self):
        g = parse_digraph("p kfvd 0 0\n")
        assert not g.vertices

    @pytest.mark.parametrize(
        "text,line",
        [
            ("p kfvd 2 1\ne 1 1\n", 2),  # self-loop
            ("p kfvd 2 2\ne 1 2\ne 1 2\n", 3),  # duplicate arc
            ("p kfvd 2 1\ne 1 3\n", 2),  # endpoint out of range
            ("p wrong 2 1\ne 1 2\n", 1),  # malformed header
            ("e 1 2\n", 1),  # arc before header
            ("p kfvd 2 2\ne 1 2\n", 2),  # arc count mismatch
            ("p kfvd 2 0\ne 1 2\n", 2),  # more arcs than declared
            ("x 1 2\n", 1),  # unknown line type
        ],
    )
    def test_errors_carry_line_numbers(self, text, line):
        with pytest.raises(ParseError) as exc:
            parse_digraph(text)
        assert exc.value.line_no == line

    def test_missing_header(self):
        with pytest.raises(ParseError):
            parse_digraph("c only comments\n")


class TestSerialize:
    def test_round_trip_generated(self):
        for g in [gen_triangles(3), gen_random(8, 0.3, 42), gen_random(5, 0.0, 1)]:
            assert parse_digraph(serialize_digraph(g)) == g

    def test_arcs_sorted(self):
        g = Digraph([1, 2, 3], [(3, 1), (1, 2)])
        assert serialize_digraph(g) == "p kfvd 3 2\ne 1 2\ne 3 1\n"


class TestScc:
    def test_two_cycle_single_class(self, two_cycle):
        assert scc_partition(two_cycle) == [frozenset({1, 2})]

    def test_path_two_classes(self):
        g = Digraph([1, 2], [(1, 2)])
        assert sorted(scc_partition(g), key=min) == [frozenset({1}), frozenset({2})]

    def test_two_triangles(self):
        comps = scc_partition(gen_triangles(2))
        assert sorted(comps, key=min) == [frozenset({1, 2, 3}), frozenset({4, 5, 6})]


class TestKnots:
    def test_two_cycle_is_knot(self, two_cycle):
        assert find_knots(two_cycle).knots == (frozenset({1, 2}),)

    def test_path_has_no_knot(self):
        assert not find_knots(Digraph([1, 2], [(1, 2)])).knots

    def test_triangle_with_escape_arc(self):
        g = Digraph([1, 2, 3, 4], [(1, 2), (2, 3), (3, 1), (3, 4)])
        assert not find_knots(g).knots

    def test_knot_deletion_destroys_the_knot(self):
        for g in [gen_triangles(2), Digraph([1, 2, 3], [(1, 2), (2, 1), (2, 3), (3, 2)])]:
            for knot in find_knots(g).knots:
                for v in knot:
                    after = find_knots(g.remove_vertices({v})).knots
                    assert knot not in after


class TestKnotFree:
    def test_empty_graph(self):
        assert is_knot_free(Digraph([], []))

    def test_two_cycle(self, two_cycle):
        assert not is_knot_free(two_cycle)

    def test_partially_deleted_triangle_family(self):
        g = gen_triangles(2).remove_vertices({3})
        assert not is_knot_free(g)  # second triangle still a knot


class TestVerify:
    def test_two_cycle_single_vertex(self, two_cycle):
        r = verify_solution(two_cycle, {1}, check_minimal=True)
        assert r.knot_free and r.minimal

    def test_two_cycle_both_vertices_not_minimal(self, two_cycle):
        r = verify_solution(two_cycle, {1, 2}, check_minimal=True)
        assert r.knot_free and r.minimal is False
        assert r.redundant_vertex in {1, 2}
        assert is_knot_free(two_cycle.remove_vertices({1, 2} - {r.redundant_vertex}))

    def test_triangle_family_minimal_pair(self):
        r = verify_solution(gen_triangles(2), {3, 6}, check_minimal=True)
        assert r.knot_free and r.minimal

    def test_witness_on_failure(self, two_cycle):
        r = verify_solution(two_cycle, frozenset())
        assert not r.knot_free
        assert r.witness_knot == frozenset({1, 2})

    def test_unknown_ids_rejected(self, two_cycle):
        with pytest.raises(ValueError):
            verify_solution(two_cycle, {7})


class TestRemoveVertices:
    def test_triangle_minus_one(self, triangle):
        g = triangle.remove_vertices({2})
        assert g.arcs == frozenset({(3, 1)})
        assert triangle.num_arcs == 3  # original untouched

    def test_identity(self, triangle):
        assert triangle.remove_vertices(set()) == triangle

    def test_remove_all(self, two_cycle):
        assert not two_cycle.remove_vertices({1, 2}).vertices

    def test_unknown_vertex(self, triangle):
        with pytest.raises(ValueError):
            triangle.remove_vertices({9})


def _reaches_sink_brute(g, v):
    # independent check: DFS from v, looking for any vertex with no out-arcs
    seen, frontier = {v}, [v]
    while frontier:
        u = frontier.pop()
        if not g.out_neighbors(u):
            return True
        for w in g.out_neighbors(u):
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    return False


@settings(max_examples=300, deadline=None)
@given(digraphs(max_n=12))
def test_no_knots_iff_every_vertex_reaches_a_sink(g):
    no_knots = not find_knots(g).knots
    all_reach = all(_reaches_sink_brute(g, v) for v in g.vertices)
    assert no_knots == all_reach
    assert is_knot_free(g) == no_knots


@settings(max_examples=200, deadline=None)
@given(digraphs(max_n=10))
def test_scc_is_a_partition(g):
    comps = scc_partition(g)
    flat = [v for c in comps for v in c]
    assert sorted(flat) == sorted(g.vertices)
