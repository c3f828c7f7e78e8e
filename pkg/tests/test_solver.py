import pytest
from hypothesis import given, settings

from kfvd import Digraph, solve, verify_solution
from kfvd.generators import gen_random, gen_triangles
from kfvd.oracle import oracle_min

from conftest import digraphs, exhaustive_digraphs


class TestKnownInstances:
    def test_triangle(self, triangle):
        solution, stats = solve(triangle)
        assert solution.size == 1
        assert solution.deletion_set == frozenset({2})
        assert solution.sink_set == frozenset({1})
        assert stats.leaves == 3

    def test_triangle_family_k5(self):
        solution, stats = solve(gen_triangles(5))
        assert solution.size == 5
        assert stats.leaves == 3**5

    def test_two_cycle(self, two_cycle):
        solution, _ = solve(two_cycle)
        assert solution.size == 1

    def test_empty_graph(self):
        solution, stats = solve(Digraph([], []))
        assert solution.size == 0
        assert stats.nodes == 1
        assert stats.leaves == 1

    def test_knot_free_input_needs_nothing(self):
        solution, _ = solve(Digraph([1, 2], [(1, 2)]))
        assert solution.size == 0
        assert solution.deletion_set == frozenset()

    def test_five_cycle_uses_high_drop_branching(self):
        g = Digraph(range(1, 6), [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)])
        solution, stats = solve(g)
        assert solution.size == 1
        assert stats.sub1_sink >= 1

    def test_isolated_vertices_are_free(self):
        g = Digraph([1, 2, 3, 4], [(1, 2), (2, 1)])
        solution, _ = solve(g)
        assert solution.size == 1


class TestOracleAgreement:
    def test_exhaustive_n3(self):
        for g in exhaustive_digraphs(3):
            solution, _ = solve(g)
            assert solution.size == oracle_min(g).size

    @pytest.mark.parametrize("n", [5, 6, 7])
    @pytest.mark.parametrize("p", [0.2, 0.4])
    def test_random_instances(self, n, p):
        for seed in range(15):
            g = gen_random(n, p, seed)
            solution, _ = solve(g)
            assert solution.size == oracle_min(g).size, f"n={n} p={p} seed={seed}"


class TestWitness:
    @settings(max_examples=150, deadline=None)
    @given(digraphs(max_n=8))
    def test_witness_is_a_valid_solution(self, g):
        solution, stats = solve(g)
        assert len(solution.deletion_set) == solution.size
        assert verify_solution(g, solution.deletion_set).knot_free
        assert stats.leaves <= stats.nodes


class TestDeterminism:
    def test_identical_runs(self):
        g = gen_random(8, 0.3, 7)
        trace_a, trace_b = [], []
        sol_a, stats_a = solve(g, trace=trace_a)
        sol_b, stats_b = solve(g, trace=trace_b)
        assert sol_a == sol_b
        assert stats_a.as_dict() == stats_b.as_dict()
        assert trace_a == trace_b


class TestStats:
    def test_triangle_counters(self, triangle):
        _, stats = solve(triangle)
        assert stats.nodes == 4
        assert stats.sub3 == 3
        assert stats.max_depth == 1

    def test_reductions_counted(self):
        _, stats = solve(Digraph([1, 2, 3], [(1, 2), (2, 3)]))
        assert stats.rr2 + stats.rr3 >= 1
        assert stats.nodes == 1


class TestTrace:
    def test_trace_entries_have_decreasing_measure(self):
        trace = []
        solve(gen_random(7, 0.35, 3), trace=trace)
        for depth, sub, vertex, kind, before, after, cost in trace:
            assert after < before
            assert cost >= 0
            assert sub in {"sub1", "sub2", "sub3-single", "sub3-double", "sub4", "forced"}
