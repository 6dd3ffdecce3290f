import logging
from dataclasses import dataclass
from itertools import combinations
from typing import List, Tuple

from src.errors import PreconditionError
from src.hypergraph import (Hypergraph, complete_graph, cycle_graph, relabel,
                            shadow)
from src.reductions import restricted_pattern
from src.structure import find_clique, find_induced_long_cycle, is_k_partite

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LiftStructure:
    """
    Parameters for lifting a hard s-graph problem to a pattern F.

    ``relabeling[v]`` is the new id of vertex ``v`` of F; the chosen
    vertices ``members`` land on ``0..length-1`` in order and
    ``relabelled`` is F under that map.
    """
    length: int
    s: int
    restricted: Hypergraph
    relabeling: Tuple[int, ...]
    branch: str
    members: Tuple[int, ...]
    relabelled: Hypergraph

    def describe(self) -> str:
        if self.branch == 'cycle':
            name = f"C_{self.length}"
        else:
            name = f"K_{self.length}^({self.s})"
        return (f"branch={self.branch} l={self.length} s={self.s} "
                f"L={name}")


def _relabeling(n: int, members: List[int]) -> Tuple[int, ...]:
    order = members + [v for v in range(n) if v not in members]
    mapping = [0] * n
    for new, old in enumerate(order):
        mapping[old] = new
    return tuple(mapping)


def _minimal_uncovered(pattern: Hypergraph, clique: List[int]) -> List[int]:
    for size in range(3, len(clique) + 1):
        for subset in combinations(clique, size):
            if not any(set(subset) <= set(edge) for edge in pattern.edges):
                return list(subset)
    raise AssertionError(f"clique {clique} lies inside an edge")


def structure_finder(pattern: Hypergraph) -> LiftStructure:
    """
    Locate a cycle or simplex structure in a non-k-partite pattern.

    When the 2-shadow has an induced cycle of length at least 4, the
    cycle is moved to the front and ``s = 2``. Otherwise the shadow is
    chordal, holds a clique X on k + 1 vertices, and a smallest subset Y
    of X inside no edge is moved to the front with ``s = |Y| - 1``.

    Parameters
    ----------
    pattern: Hypergraph

    Returns
    -------
    LiftStructure
    """
    if is_k_partite(pattern):
        raise PreconditionError(
            f"pattern is {pattern.k}-partite, no hard structure exists")
    k = pattern.k
    flat = shadow(pattern, 2) if k > 2 else pattern
    cycle = find_induced_long_cycle(flat)
    if cycle is not None:
        branch, members, s = 'cycle', cycle, 2
        expected = cycle_graph(len(cycle))
    else:
        clique = find_clique(flat, k + 1)
        if clique is None:
            raise AssertionError(
                "chordal shadow of a non-k-partite pattern has no clique "
                f"on {k + 1} vertices")
        members = _minimal_uncovered(pattern, clique)
        branch, s = 'clique', len(members) - 1
        expected = complete_graph(len(members), s)
    length = len(members)
    mapping = _relabeling(pattern.n, members)
    relabelled = relabel(pattern, dict(enumerate(mapping)))
    restricted = restricted_pattern(relabelled, length, s)
    if restricted.edge_set != expected.edge_set:
        raise AssertionError(
            f"restricted pattern {list(restricted.edges)} is not "
            f"{list(expected.edges)}")
    logger.debug("structure: %s on %s", branch, members)
    return LiftStructure(length, s, restricted, mapping, branch,
                         tuple(members), relabelled)
