import os
from itertools import combinations, product

import numpy as np
import pytest

from src.cnf import (CnfFormula, is_satisfiable, max_sat, read_dimacs,
                     satisfied_count)
from src.copies import enumerate_copies
from src.errors import PreconditionError
from src.generators import random_3occ_2cnf
from src.hypergraph import cycle_graph, intersecting_pair
from src.oracles import RemProblem, solve_ex, solve_rem
from src.sat_reductions import (INTERSECT_ONE, INTERSECT_TWO,
                                assignment_from_deletion,
                                assignment_from_retained, clause_roles,
                                e23_intersection_inventory, max2sat_to_e23,
                                sat_to_triangle, variable_triangle)

FIXTURES = os.path.join(os.path.dirname(__file__), 'fixtures')

CLAUSES = [tuple(s * v for s, v in zip(signs, (1, 2, 3)))
           for signs in product((1, -1), repeat=3)]
SMALL_FORMULAS = [CnfFormula(3, chosen)
                  for size in range(3)
                  for chosen in combinations(CLAUSES, size)]


def _rem_partite(output, budget=60):
    return solve_rem(RemProblem(output.produced, canonical_only=True),
                     budget=budget)


class TestClauseRoles:

    @pytest.mark.parametrize("clause,expected", [
        ((3, 1, 2), (1, (1, 2, 3))),
        ((-2, -1, -3), (1, (-1, -2, -3))),
        ((-1, 2, -3), (2, (-1, -3, 2))),
        ((1, -2, 3), (2, (1, 3, -2))),
    ])
    def test_roles(self, clause, expected):
        assert clause_roles(clause) == expected

    def test_variable_triangle(self):
        assert variable_triangle(1) == (0, 1, 2)
        assert variable_triangle(2) == (3, 4, 5)


class TestSatToTriangle:

    @classmethod
    def setup_class(cls):
        cls.formula = read_dimacs(os.path.join(FIXTURES, 'formula.cnf'))
        cls.output = sat_to_triangle(cls.formula)

    def test_fixture_shape(self):
        assert self.output.parameters['m0'] == 1
        assert self.output.parameters['threshold'] == 10
        assert self.output.relation.op == 'iff'
        assert self.output.relation.offset == 10
        assert len(self.output.graph) == 9 + 16 + 12
        assert self.output.fresh == (9, 17)
        assert self.output.graph.n == 17

    def test_fixture_reaches_threshold(self):
        result = _rem_partite(self.output)
        assert result.value == 10
        assignment = assignment_from_deletion(self.formula, result.witness)
        assert satisfied_count(self.formula, assignment) == self.formula.m

    def test_no_clauses(self):
        output = sat_to_triangle(CnfFormula(2))
        assert output.relation.offset == 2
        assert _rem_partite(output).value == 2

    def test_preconditions(self):
        with pytest.raises(PreconditionError):
            sat_to_triangle(CnfFormula(3, ((1, 2),)))
        with pytest.raises(PreconditionError):
            sat_to_triangle(CnfFormula(3, ((1, 2, 3), (3, 2, 1))))

    def test_no_witness_translation(self):
        with pytest.raises(PreconditionError):
            self.output.translate_witness([])

    @pytest.mark.parametrize("deleted,value", [
        ([(0, 1)], True),
        ([(0, 2)], False),
        ([(1, 2)], True),
        ([(0, 1), (0, 2)], True),
        ([], True),
    ])
    def test_assignment_from_deletion(self, deleted, value):
        assert assignment_from_deletion(CnfFormula(1), deleted) == (value,)


def _triangle_count(graph):
    return len(enumerate_copies(graph, cycle_graph(3)))


class TestSharedVariables:
    """Clauses over overlapping variables keep their gadgets apart."""

    @pytest.mark.parametrize("formula", [
        CnfFormula(4, ((1, 2, 4), (1, 3, 4))),
        CnfFormula(3, ((1, 2, 3), (-1, -2, -3))),
        CnfFormula(3, ((2, 3, 1), (-2, -3, -1))),
        CnfFormula(3, ((-3, -2, -1), (1, 3, 2))),
        CnfFormula(4, ((3, 4, 1), (2, 1, 4))),
    ])
    def test_satisfiable_formula_meets_threshold(self, formula):
        assert is_satisfiable(formula)
        output = sat_to_triangle(formula)
        result = _rem_partite(output)
        assert result.value == output.relation.offset
        assignment = assignment_from_deletion(formula, result.witness)
        assert satisfied_count(formula, assignment) == formula.m

    def test_triangles_stay_inside_gadgets(self):
        formula = CnfFormula(4, ((1, 2, 4), (1, 3, 4), (-1, 2, -4)))
        output = sat_to_triangle(formula)
        assert output.parameters['m0'] == 2
        assert output.relation.offset == 4 + 4 + 4 + 3
        assert len(output.graph) == 12 + 16 + 16 + 12
        assert _triangle_count(output.graph) == 4 + 9 + 9 + 7

    def test_single_sign_clause(self):
        output = sat_to_triangle(CnfFormula(3, ((1, 2, 3),)))
        assert output.relation.offset == 3 + 4
        assert _rem_partite(output).value == 7


@pytest.mark.parametrize("formula", SMALL_FORMULAS)
def test_threshold_on_small_formulas(formula):
    output = sat_to_triangle(formula)
    result = _rem_partite(output)
    assert output.relation.holds(result.value, is_satisfiable(formula))
    assert result.value == output.relation.offset


@pytest.mark.slow
def test_unsatisfiable_formula_exceeds_threshold():
    formula = CnfFormula(3, tuple(CLAUSES))
    assert not is_satisfiable(formula)
    output = sat_to_triangle(formula)
    result = _rem_partite(output, budget=150)
    assert result.value > output.relation.offset
    assert output.relation.holds(result.value, False)


class TestMax2Sat:

    @classmethod
    def setup_class(cls):
        cls.formula = read_dimacs(os.path.join(FIXTURES, 'max2sat.cnf'))

    @pytest.mark.parametrize("variant,t", [(INTERSECT_TWO, 2),
                                           (INTERSECT_ONE, 1)])
    def test_fixture(self, variant, t):
        output = max2sat_to_e23(self.formula, variant)
        assert len(output.graph) == 10
        assert output.patterns_out == (intersecting_pair(t, 3),)
        result = solve_ex(RemProblem(output.graph, output.patterns_out),
                          budget=60)
        assert result.value == 5
        assert output.relation.holds(result.value, max_sat(self.formula)[0])

    def test_inventory(self):
        output = max2sat_to_e23(self.formula)
        assert len(e23_intersection_inventory(output)) == 2 + 3 * 3

    def test_source_is_preprocessed(self):
        formula = CnfFormula(3, ((1, 2), (-1, -2), (1, 3)))
        output = max2sat_to_e23(formula)
        assert output.source == CnfFormula(2, ((1, 2), (-1, -2)))
        assert output.parameters['removed'] == 1
        assert output.relation.offset == 2

    def test_assignment_from_retained(self):
        output = max2sat_to_e23(self.formula)
        literal_edges = output.parameters['literal_edges']
        retained = [literal_edges[1], literal_edges[-2]]
        assert assignment_from_retained(output, retained) == (False, True)
        # both literal edges of x1 gone: x1 occurs positively more often
        assert assignment_from_retained(output, [literal_edges[-2]]) == \
            (True, True)

    @pytest.mark.parametrize("formula", [
        CnfFormula(3, ((1, 2, 3),)),
        CnfFormula(2, ((1, 2), (2, 1), (-1, -2))),
        CnfFormula(3, ((1, 2), (1, -2), (1, 3), (-1, -3))),
    ])
    def test_preconditions(self, formula):
        with pytest.raises(PreconditionError):
            max2sat_to_e23(formula)

    def test_unknown_variant(self):
        with pytest.raises(PreconditionError):
            max2sat_to_e23(self.formula, 'intersect-3')


@pytest.mark.parametrize("seed", range(8))
@pytest.mark.parametrize("variant", [INTERSECT_TWO, INTERSECT_ONE])
def test_random_formulas(seed, variant):
    formula = random_3occ_2cnf(np.random.default_rng(seed), 4, 5)
    output = max2sat_to_e23(formula, variant)
    phi = output.source
    result = solve_ex(RemProblem(output.graph, output.patterns_out),
                      budget=60)
    assert result.value == phi.n + max_sat(phi)[0]
