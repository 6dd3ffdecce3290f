import pytest

from src.errors import InvalidHypergraphError
from src.homomorphism import is_homomorphism
from src.hypergraph import (Hypergraph, blowup, blowup_projection,
                            complete_graph, cycle_graph, induced_subgraph,
                            intersecting_pair, link, make_edge,
                            matching_graph, relabel, shadow, single_edge,
                            sunflower)
from src.partition import PartitionedHypergraph


class TestHypergraph:

    @classmethod
    def setup_class(cls):
        cls.k4_3 = complete_graph(4, 3)
        cls.path = Hypergraph(2, 4, [(2, 1), (0, 1), (3, 2)])

    def test_edges_are_sorted(self):
        assert self.path.edges == ((0, 1), (1, 2), (2, 3))
        assert (1, 0) in self.path
        assert len(self.path) == 3

    @pytest.mark.parametrize("k,n,edges", [
        (2, 3, [(0, 0)]),
        (2, 3, [(0, 3)]),
        (2, 3, [(0, 1), (1, 0)]),
        (3, 4, [(0, 1)]),
        (0, 3, []),
        (2, -1, []),
    ])
    def test_invalid(self, k, n, edges):
        with pytest.raises(InvalidHypergraphError):
            Hypergraph(k, n, edges)

    def test_degrees_and_neighbours(self):
        assert self.path.degrees() == [1, 2, 2, 1]
        assert self.path.neighbours()[1] == frozenset({0, 2})
        assert self.path.incident()[2] == [1, 2]
        assert self.path.covered_vertices() == [0, 1, 2, 3]

    def test_edit_helpers(self):
        smaller = self.path.without_edges([(1, 2)])
        assert smaller.edges == ((0, 1), (2, 3))
        assert smaller.with_edges([(2, 1)]) == self.path
        assert self.path.spanning([(0, 3)]).edges == ((0, 3),)

    def test_shadow(self):
        assert shadow(self.k4_3, 2) == complete_graph(4, 2)
        assert shadow(self.k4_3, 3) is self.k4_3
        with pytest.raises(InvalidHypergraphError):
            shadow(self.k4_3, 1)

    def test_link(self):
        assert link(self.k4_3, [0]).edges == ((1, 2), (1, 3), (2, 3))
        assert link(self.k4_3, [0, 1]).edges == ((2,), (3,))
        with pytest.raises(InvalidHypergraphError):
            link(self.k4_3, [0, 1, 2])

    def test_blowup(self):
        triangle = cycle_graph(3)
        blown = blowup(triangle, 2)
        assert blown.n == 6
        assert len(blown) == 12
        assert (0, 2) in blown and (1, 3) in blown and (0, 1) not in blown
        projection = blowup_projection(triangle, 2)
        assert is_homomorphism(blown, triangle, projection)

    def test_induced_subgraph(self):
        sub, order = induced_subgraph(self.path, [3, 1, 2])
        assert order == [1, 2, 3]
        assert sub.edges == ((0, 1), (1, 2))

    def test_relabel(self):
        moved = relabel(self.path, {0: 3, 1: 2, 2: 1, 3: 0})
        assert moved.edges == self.path.edges

    def test_constructors(self):
        assert len(complete_graph(6, 3)) == 20
        assert cycle_graph(4).edges == ((0, 1), (0, 3), (1, 2), (2, 3))
        assert single_edge(3).edges == ((0, 1, 2),)
        assert matching_graph(2, 3).edges == ((0, 1, 2), (3, 4, 5))
        assert sunflower(1, 3, 3).edges == ((0, 1, 2), (0, 3, 4),
                                            (0, 5, 6))
        assert intersecting_pair(2, 3).edges == ((0, 1, 2), (0, 1, 3))
        with pytest.raises(InvalidHypergraphError):
            cycle_graph(2)
        with pytest.raises(InvalidHypergraphError):
            sunflower(3, 3, 2)

    def test_make_edge(self):
        assert make_edge([3, 1, 2]) == (1, 2, 3)


class TestPartitionedHypergraph:

    def setup_method(self):
        self.base = Hypergraph(2, 4, [(0, 1), (0, 2), (0, 3), (1, 3),
                                      (2, 3)])
        self.partitioned = PartitionedHypergraph(self.base, cycle_graph(3),
                                                 (0, 1, 1, 2))

    def test_parts(self):
        assert self.partitioned.part(1) == [1, 2]
        assert self.partitioned.part_sizes() == [1, 2, 1]
        assert self.partitioned.as_dict() == {0: [0], 1: [1, 2], 2: [3]}
        assert self.partitioned.edges_between([1, 0]) == [(0, 1), (0, 2)]

    def test_with_base(self):
        smaller = self.partitioned.with_base(
            self.base.without_edges([(0, 3)]))
        assert len(smaller.base) == 4
        assert smaller.parts == self.partitioned.parts

    @pytest.mark.parametrize("parts", [
        (0, 1, 1),
        (0, 1, 1, 3),
        (0, 0, 1, 2),
    ])
    def test_invalid(self, parts):
        with pytest.raises(InvalidHypergraphError):
            PartitionedHypergraph(self.base, cycle_graph(3), parts)

    def test_pattern_edge_required(self):
        path = Hypergraph(2, 3, [(0, 1), (1, 2)])
        pattern = Hypergraph(2, 3, [(0, 1)])
        with pytest.raises(InvalidHypergraphError):
            PartitionedHypergraph(path, pattern, (0, 1, 2))
