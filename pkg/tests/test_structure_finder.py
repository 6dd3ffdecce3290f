from itertools import combinations

import pytest

from src.errors import PreconditionError
from src.hypergraph import (Hypergraph, complete_graph, cycle_graph,
                            relabel)
from src.structure import is_k_partite
from src.structure_finder import structure_finder


@pytest.mark.parametrize("pattern,description", [
    (cycle_graph(5), "branch=cycle l=5 s=2 L=C_5"),
    (cycle_graph(3), "branch=clique l=3 s=2 L=K_3^(2)"),
    (complete_graph(4, 3), "branch=clique l=4 s=3 L=K_4^(3)"),
    (Hypergraph(3, 4, [(0, 1, 2), (0, 1, 3), (0, 2, 3)]),
     "branch=clique l=3 s=2 L=K_3^(2)"),
])
def test_named_patterns(pattern, description):
    assert structure_finder(pattern).describe() == description


def test_relabeling_moves_members_to_front():
    pattern = Hypergraph(3, 4, [(0, 1, 2), (0, 1, 3), (0, 2, 3)])
    found = structure_finder(pattern)
    assert found.members == (1, 2, 3)
    assert found.relabeling == (3, 0, 1, 2)
    assert found.relabelled == relabel(pattern, {0: 3, 1: 0, 2: 1, 3: 2})
    assert found.restricted == cycle_graph(3)


def test_cycle_inside_larger_graph():
    # a pentagon with a pendant triangle hanging off vertex 0
    pattern = Hypergraph(2, 7, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4),
                                (0, 5), (0, 6), (5, 6)])
    found = structure_finder(pattern)
    assert found.branch == 'cycle'
    assert found.length == 5
    assert found.restricted == cycle_graph(5)


@pytest.mark.parametrize("pattern", [
    cycle_graph(4),
    cycle_graph(6),
    Hypergraph(3, 5, [(0, 1, 2), (0, 3, 4)]),
])
def test_partite_patterns_rejected(pattern):
    with pytest.raises(PreconditionError):
        structure_finder(pattern)


def _all_patterns(n, k):
    candidates = list(combinations(range(n), k))
    for mask in range(1, 1 << len(candidates)):
        yield Hypergraph(k, n, [e for i, e in enumerate(candidates)
                                if mask >> i & 1])


def _check_every_pattern(n, k):
    checked = 0
    for pattern in _all_patterns(n, k):
        if is_k_partite(pattern):
            continue
        found = structure_finder(pattern)
        assert found.s <= k
        assert found.restricted.n == found.length
        checked += 1
    return checked


@pytest.mark.parametrize("n,k", [(3, 2), (4, 2), (4, 3)])
def test_every_small_pattern(n, k):
    assert _check_every_pattern(n, k) > 0


@pytest.mark.slow
@pytest.mark.parametrize("n,k", [(5, 2), (5, 3)])
def test_every_pattern_on_five_vertices(n, k):
    assert _check_every_pattern(n, k) > 0
