import os

import pytest

from src.errors import InvalidHypergraphError, ParseError
from src.hypergraph import (complete_graph, cycle_graph, intersecting_pair,
                            matching_graph, single_edge, sunflower)
from src.patterns import PatternFactory, PatternKind, parse_pattern

FIXTURES = os.path.join(os.path.dirname(__file__), 'fixtures')


@pytest.mark.parametrize("name,k,expected", [
    ('c5', None, cycle_graph(5)),
    ('C4 ', None, cycle_graph(4)),
    ('k4', None, complete_graph(4, 2)),
    ('k4_3', None, complete_graph(4, 3)),
    ('m2', 3, matching_graph(2, 3)),
    ('m3_2', None, matching_graph(3, 2)),
    ('e_2_3', None, intersecting_pair(2, 3)),
    ('s_1_3_3', None, sunflower(1, 3, 3)),
    ('edge', 4, single_edge(4)),
    ('edge_2', None, single_edge(2)),
])
def test_named_patterns(name, k, expected):
    assert parse_pattern(name, k) == expected


@pytest.mark.parametrize("name", ['m2', 'edge'])
def test_uniformity_required(name):
    with pytest.raises(ParseError):
        parse_pattern(name)


def test_unknown_name():
    with pytest.raises(ParseError):
        parse_pattern('petersen')


def test_bad_parameters():
    with pytest.raises(InvalidHypergraphError):
        parse_pattern('c2')
    with pytest.raises(InvalidHypergraphError):
        parse_pattern('e_3_3')


def test_pattern_file():
    assert parse_pattern(os.path.join(FIXTURES, 'k4_3.hg')) == \
        complete_graph(4, 3)


class TestPatternFactory:

    def test_matching_uses_instance_uniformity(self):
        factory = PatternFactory(PatternKind.MATCHING)
        assert factory.get_pattern((2,), 4) == matching_graph(2, 4)

    def test_complete_defaults_to_graphs(self):
        factory = PatternFactory(PatternKind.COMPLETE)
        assert factory.get_pattern((3,), 5) == cycle_graph(3)
