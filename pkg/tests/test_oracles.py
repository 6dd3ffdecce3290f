import pytest
from hypothesis import given, settings

from src.errors import BudgetExceededError, PreconditionError
from src.hypergraph import (Hypergraph, complete_graph, cycle_graph,
                            matching_graph)
from src.oracles import (RemProblem, SolveResult, SolveStats, count_copies,
                         enumerate_maximal_free, is_minimum_deletion,
                         minimum_hitting_set, solve_ex, solve_rem)
from src.partition import PartitionedHypergraph
from src.settings import BUDGET_ENV, DEFAULT_EDGE_BUDGET
from tests.strategies import hypergraphs


class TestRemProblem:

    def test_needs_pattern(self):
        with pytest.raises(PreconditionError):
            RemProblem(cycle_graph(3))

    def test_uniformity_mismatch(self):
        with pytest.raises(PreconditionError):
            RemProblem(cycle_graph(3), (complete_graph(4, 3),))

    def test_canonical_needs_partition(self):
        with pytest.raises(PreconditionError):
            RemProblem(cycle_graph(3), (cycle_graph(3),), True)

    def test_canonical_defaults_to_partition_pattern(self):
        partitioned = PartitionedHypergraph(cycle_graph(3), cycle_graph(3),
                                            (0, 1, 2))
        problem = RemProblem(partitioned, canonical_only=True)
        assert problem.patterns == (cycle_graph(3),)
        assert problem.graph is partitioned.base


@pytest.mark.parametrize("graph,pattern,rem", [
    (complete_graph(4, 2), cycle_graph(3), 2),
    (complete_graph(5, 2), cycle_graph(3), 4),
    (cycle_graph(5), cycle_graph(3), 0),
    (complete_graph(4, 2), matching_graph(2, 2), 3),
    (complete_graph(5, 3), matching_graph(2, 3), 0),
    (complete_graph(5, 3), complete_graph(4, 3), 3),
])
def test_rem_values(graph, pattern, rem):
    result = solve_rem(RemProblem(graph, (pattern,)), budget=60)
    assert result.kind == 'rem'
    assert result.value == rem
    remaining = graph.without_edges(result.witness)
    assert count_copies(remaining, pattern) == 0


def test_ex_complements_rem():
    graph = complete_graph(5, 2)
    problem = RemProblem(graph, (cycle_graph(3),))
    result = solve_ex(problem, budget=60)
    assert result.kind == 'ex'
    assert result.value == 6
    assert count_copies(graph.spanning(result.witness), cycle_graph(3)) == 0


def test_several_patterns():
    problem = RemProblem(complete_graph(5, 2),
                         (cycle_graph(3), cycle_graph(4)))
    # the densest graph on 5 vertices without C3 and C4 is C5
    assert solve_ex(problem, budget=60).value == 5


def test_budget():
    with pytest.raises(BudgetExceededError) as info:
        solve_rem(RemProblem(complete_graph(5, 2), (cycle_graph(3),)),
                  budget=5)
    assert info.value.edges == 10
    assert info.value.budget == 5


def test_default_budget_ignores_settings_file(tmp_path, monkeypatch):
    (tmp_path / 'settings.ini').write_text("[oracle]\nedge_budget = 1\n")
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv(BUDGET_ENV, '2')
    result = solve_rem(RemProblem(complete_graph(4, 2), (cycle_graph(3),)))
    assert result.value == 2
    with pytest.raises(BudgetExceededError) as info:
        solve_rem(RemProblem(complete_graph(12, 2), (cycle_graph(3),)))
    assert info.value.budget == DEFAULT_EDGE_BUDGET


class TestPartite:

    @classmethod
    def setup_class(cls):
        base = Hypergraph(2, 4, [(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)])
        cls.partitioned = PartitionedHypergraph(base, cycle_graph(3),
                                                (0, 1, 1, 2))

    def test_canonical_copies_only(self):
        problem = RemProblem(self.partitioned, canonical_only=True)
        result = solve_rem(problem, budget=60)
        assert result.value == 1
        assert result.witness == ((0, 3),)

    def test_all_copies(self):
        # the same triangles, since parts 1 and 2 carry no edge inside
        problem = RemProblem(self.partitioned.base, (cycle_graph(3),))
        assert solve_rem(problem, budget=60).value == 1


class TestMinimality:

    def setup_method(self):
        self.problem = RemProblem(complete_graph(4, 2), (cycle_graph(3),))

    def test_optimal_result(self):
        assert is_minimum_deletion(self.problem,
                                   solve_rem(self.problem, budget=60))

    def test_oversized_deletion(self):
        wasteful = SolveResult('rem', 3, ((0, 1), (0, 2), (0, 3)),
                               SolveStats())
        assert not is_minimum_deletion(self.problem, wasteful)

    def test_value_limit(self):
        result = SolveResult('rem', 5, tuple(complete_graph(4, 2).edges[:5]),
                             SolveStats())
        with pytest.raises(PreconditionError):
            is_minimum_deletion(self.problem, result)

    def test_witness_length_checked(self):
        with pytest.raises(AssertionError):
            SolveResult('rem', 2, ((0, 1),), SolveStats())


class TestMaximalFree:

    def test_triangle(self):
        problem = RemProblem(cycle_graph(3), (cycle_graph(3),))
        assert len(enumerate_maximal_free(problem)) == 3

    def test_stars_and_triangles(self):
        problem = RemProblem(complete_graph(4, 2), (matching_graph(2, 2),))
        maximal = enumerate_maximal_free(problem)
        assert len(maximal) == 8
        assert all(len(edges) == 3 for edges in maximal)

    def test_free_graph_is_its_own_maximum(self):
        path = Hypergraph(2, 3, [(0, 1), (1, 2)])
        problem = RemProblem(path, (matching_graph(2, 2),))
        assert enumerate_maximal_free(problem) == [path.edges]

    def test_edge_limit(self):
        with pytest.raises(PreconditionError):
            enumerate_maximal_free(
                RemProblem(complete_graph(7, 2), (cycle_graph(3),)))


def test_hitting_set_without_copies():
    assert minimum_hitting_set([], 4) == 0


def test_hitting_set_prefers_shared_edge():
    # edge 2 is in all three sets
    assert minimum_hitting_set([0b0111, 0b1100, 0b0101], 4) == 0b0100


@settings(max_examples=40, deadline=None)
@given(hypergraphs(k=2, max_vertices=6, max_edges=12))
def test_ex_is_largest_maximal_free(graph):
    problem = RemProblem(graph, (cycle_graph(3),))
    largest = max(len(edges) for edges in enumerate_maximal_free(problem))
    assert solve_ex(problem, budget=60).value == largest
