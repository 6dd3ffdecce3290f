from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from src.errors import PreconditionError
from src.helpers import binom
from src.hypergraph import (Edge, Hypergraph, intersecting_pair, make_edge,
                            sunflower)
from src.reductions import ReductionOutput, Relation


def _check_range(graph: Hypergraph, t: int) -> None:
    if not 1 <= t < graph.k:
        raise PreconditionError(
            f"intersection size {t} outside 1..{graph.k - 1}")


def uplift_uniformity(graph: Hypergraph, t: int) -> ReductionOutput:
    """
    Raise the uniformity by one, keeping the intersection size.

    Edge ``i`` gains its own fresh vertex ``n + i``.

    Parameters
    ----------
    graph: Hypergraph
    t: int
        Intersection size of the forbidden pair, ``1 <= t < k``.

    Returns
    -------
    ReductionOutput
    """
    _check_range(graph, t)
    back_map: Dict[Edge, Optional[Edge]] = {
        make_edge(edge + (graph.n + i,)): edge
        for i, edge in enumerate(graph.edges)}
    produced = Hypergraph(graph.k + 1, graph.n + len(graph), back_map.keys())
    relation = Relation("ex_out = ex_in", 'ex', 'ex')
    return ReductionOutput('uplift-k', graph, produced, relation,
                           (intersecting_pair(t, graph.k),),
                           (intersecting_pair(t, graph.k + 1),), back_map,
                           (graph.n, produced.n), {'t': t})


def uplift_intersection(graph: Hypergraph, t: int) -> ReductionOutput:
    """
    Raise uniformity and intersection size by one: a single fresh vertex
    ``n`` joins every edge.

    Parameters
    ----------
    graph: Hypergraph
    t: int
        ``1 <= t < k``.

    Returns
    -------
    ReductionOutput
    """
    _check_range(graph, t)
    back_map: Dict[Edge, Optional[Edge]] = {
        edge + (graph.n,): edge for edge in graph.edges}
    produced = Hypergraph(graph.k + 1, graph.n + 1, back_map.keys())
    relation = Relation("ex_out = ex_in", 'ex', 'ex')
    return ReductionOutput('uplift-kt', graph, produced, relation,
                           (intersecting_pair(t, graph.k),),
                           (intersecting_pair(t + 1, graph.k + 1),),
                           back_map, (graph.n, graph.n + 1), {'t': t})


def sunflower_step(graph: Hypergraph, t: int, r: int) -> ReductionOutput:
    """
    Add one petal's worth of room: every t-set T of vertices gets the
    edge ``T`` plus ``k - t`` fresh vertices.

    A largest subgraph free of r-petal sunflowers with kernel size t,
    together with every new edge, has no (r + 1)-petal one, so
    ``ex_out >= ex_in + binom(n, t)``. Equality can fail.

    Parameters
    ----------
    graph: Hypergraph
    t: int
        Kernel size, ``1 <= t < k``.
    r: int
        Petal count of the input pattern, at least 2.

    Returns
    -------
    ReductionOutput
    """
    _check_range(graph, t)
    if r < 2:
        raise PreconditionError(f"petal count must be >= 2, got {r}")
    k = graph.k
    added: List[Edge] = []
    next_vertex = graph.n
    for kernel in combinations(range(graph.n), t):
        fresh = tuple(range(next_vertex, next_vertex + k - t))
        next_vertex += k - t
        added.append(make_edge(kernel + fresh))
    produced = Hypergraph(k, next_vertex, list(graph.edges) + added)
    relation = Relation(f"ex_out >= ex_in + binom({graph.n}, {t})", 'ex',
                        'ex', op='ge', offset=binom(graph.n, t))
    return ReductionOutput('sunflower', graph, produced, relation,
                           (sunflower(t, k, r),), (sunflower(t, k, r + 1),),
                           None, (graph.n, next_vertex),
                           {'t': t, 'r': r, 'added': tuple(added)})


def extend_witness(output: ReductionOutput,
                   witness: Sequence[Edge]) -> Tuple[Edge, ...]:
    """
    Forward translation for :func:`sunflower_step`: a pattern-free
    subgraph of the input plus every added edge.

    Parameters
    ----------
    output: ReductionOutput
    witness: Sequence[Edge]
        Retained edges of the input instance.

    Returns
    -------
    Tuple[Edge, ...]
    """
    if output.name != 'sunflower':
        raise PreconditionError(
            f"forward translation is defined for the sunflower step, "
            f"not {output.name}")
    added = output.parameters['added']
    return tuple(sorted({make_edge(e) for e in witness} | set(added)))
