import numpy as np
import pytest

from src.errors import PreconditionError
from src.generators import random_partite
from src.hypergraph import Hypergraph, complete_graph, cycle_graph
from src.oracles import RemProblem, solve_ex, solve_rem
from src.partition import PartitionedHypergraph
from src.reductions import (Relation, blowup_reduction, cycle_reduction,
                            lift_reduction, restricted_pattern,
                            simplex_reduction)


def _rem(instance, budget=60):
    return solve_rem(RemProblem(instance, canonical_only=True),
                     budget=budget).value


def _triangle():
    return PartitionedHypergraph(cycle_graph(3), cycle_graph(3), (0, 1, 2))


def _diamond():
    base = Hypergraph(2, 4, [(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)])
    return PartitionedHypergraph(base, cycle_graph(3), (0, 1, 1, 2))


class TestRelation:

    def test_equality(self):
        relation = Relation("rem_out = 4 * rem_in", 'rem', 'rem', scale=4)
        assert relation.expected(2) == 8
        assert relation.holds(8, 2)
        assert not relation.holds(9, 2)

    def test_lower_bound(self):
        relation = Relation("ex_out >= ex_in + 5", 'ex', 'ex', op='ge',
                            offset=5)
        assert relation.holds(7, 2)
        assert relation.holds(8, 2)
        assert not relation.holds(6, 2)

    @pytest.mark.parametrize("value_out,satisfiable,expected", [
        (8, True, True),
        (9, False, True),
        (8, False, False),
        (9, True, False),
        (7, False, False),
    ])
    def test_threshold(self, value_out, satisfiable, expected):
        relation = Relation("rem = 8 iff sat", 'sat', 'rem', op='iff',
                            offset=8)
        assert relation.expected(int(satisfiable)) == 8
        assert relation.holds(value_out, satisfiable) is expected

    def test_unknown_names(self):
        with pytest.raises(ValueError):
            Relation("", 'rem', 'rem', op='le')
        with pytest.raises(ValueError):
            Relation("", 'edges', 'rem')


class TestSimplex:

    def test_triangle_becomes_complete_3_graph(self):
        output = simplex_reduction(_triangle(), 3)
        assert output.graph == complete_graph(4, 3)
        assert output.produced.parts == (0, 1, 2, 3)
        assert output.produced.pattern == complete_graph(4, 3)
        assert output.back_map[(0, 1, 2)] == (0, 1)
        assert output.back_map[(1, 2, 3)] == (1, 2)
        assert _rem(output.produced) == 1

    def test_higher_uniformity(self):
        output = simplex_reduction(_triangle(), 4)
        assert output.graph == complete_graph(5, 4)
        assert output.fresh == (3, 5)

    def test_diamond(self):
        source = _diamond()
        output = simplex_reduction(source, 3)
        assert len(output.graph) == 7
        result = solve_rem(RemProblem(output.produced, canonical_only=True),
                           budget=60)
        assert result.value == _rem(source) == 1
        assert output.translate_witness(result.witness) == ((0, 3),)

    def test_metadata(self):
        output = simplex_reduction(_triangle(), 3)
        fields = output.metadata()
        assert fields['reduction'] == 'simplex'
        assert fields['param.k'] == 3
        assert fields['fresh'] == '3..4'
        assert len(output.back_map_pairs()) == 4

    def test_preconditions(self):
        with pytest.raises(PreconditionError):
            simplex_reduction(_triangle(), 2)
        edge = PartitionedHypergraph(Hypergraph(2, 2, [(0, 1)]),
                                     Hypergraph(2, 2, [(0, 1)]), (0, 1))
        with pytest.raises(PreconditionError):
            simplex_reduction(edge, 3)


class TestCycle:

    def test_triangle_becomes_five_cycle(self):
        output = cycle_reduction(_triangle(), 5)
        assert output.graph == Hypergraph(
            2, 5, [(0, 2), (1, 2), (0, 3), (3, 4), (1, 4)])
        assert output.produced.parts == (0, 3, 4, 1, 2)
        assert output.produced.pattern == cycle_graph(5)
        assert _rem(output.produced) == 1

    def test_translate_witness(self):
        output = cycle_reduction(_triangle(), 5)
        assert output.translate_witness([(3, 4)]) == ((0, 1),)
        assert output.translate_witness([(0, 3), (1, 4)]) == ((0, 1),)
        with pytest.raises(PreconditionError):
            output.translate_witness([(0, 1)])

    def test_four_cycle_has_no_inner_vertices_per_path(self):
        output = cycle_reduction(_diamond(), 4)
        assert output.graph.n == 4 + 2
        assert _rem(output.produced) == 1

    def test_length_range(self):
        with pytest.raises(PreconditionError):
            cycle_reduction(_triangle(), 3)


@pytest.mark.parametrize("seed", range(5))
def test_random_instances_keep_rem(seed):
    source = random_partite(np.random.default_rng(seed), cycle_graph(3), 2,
                            0.6)
    expected = _rem(source)
    assert _rem(simplex_reduction(source, 3).produced) == expected
    assert _rem(cycle_reduction(source, 5).produced) == expected


class TestLift:

    @classmethod
    def setup_class(cls):
        cls.pattern = Hypergraph(3, 4, [(0, 1, 3), (0, 2, 3), (1, 2, 3)])

    def test_restricted_pattern(self):
        assert restricted_pattern(self.pattern, 3, 2) == cycle_graph(3)
        with pytest.raises(PreconditionError):
            restricted_pattern(complete_graph(4, 3), 3, 2)

    def test_triangle(self):
        output = lift_reduction(_triangle(), self.pattern, 3, 2)
        assert output.parameters['N'] == 3
        assert len(output.graph) == 9
        assert output.relation.scale == 3
        assert output.relation.holds(_rem(output.produced), 1)
        assert _rem(output.produced) == 3

    def test_full_size(self):
        output = lift_reduction(_triangle(), self.pattern, 3, 2,
                                full_size=True)
        assert output.parameters['N'] == 9
        assert len(output.graph) == 27

    def test_part_size_too_small(self):
        with pytest.raises(PreconditionError):
            lift_reduction(_triangle(), self.pattern, 3, 2, part_size=2)

    def test_pattern_mismatch(self):
        with pytest.raises(PreconditionError):
            lift_reduction(_triangle(), complete_graph(4, 3), 3, 2)

    def test_no_witness_translation(self):
        output = lift_reduction(_triangle(), self.pattern, 3, 2)
        assert output.back_map_pairs() == []
        with pytest.raises(PreconditionError):
            output.translate_witness([])


class TestBlowup:

    def test_triangle(self):
        output = blowup_reduction(_triangle(), (cycle_graph(3),), 2)
        assert len(output.graph) == 12
        assert output.relation.op == 'ge'
        assert output.relation.scale == 4
        value = solve_ex(RemProblem(output.graph, (cycle_graph(3),)),
                         budget=60).value
        assert value == 8
        assert output.relation.holds(value, 2)

    def test_family(self):
        output = blowup_reduction(_triangle(),
                                  (cycle_graph(3), complete_graph(4, 2)), 1)
        assert output.patterns_out == (cycle_graph(3), complete_graph(4, 2))
        assert output.graph == cycle_graph(3)

    @pytest.mark.parametrize("family,b", [
        ((cycle_graph(5),), 2),
        ((), 2),
        ((cycle_graph(3),), 0),
    ])
    def test_preconditions(self, family, b):
        with pytest.raises(PreconditionError):
            blowup_reduction(_triangle(), family, b)
