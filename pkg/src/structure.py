from typing import List, Optional, Sequence

from src.errors import InvalidHypergraphError
from src.helpers import popcount, to_mask
from src.homomorphism import has_homomorphism
from src.hypergraph import Hypergraph, single_edge


def max_disjoint(masks: Sequence[int], k: int, n: int,
                 limit: Optional[int] = None) -> int:
    """
    Largest number of pairwise disjoint vertex masks.

    Branch-and-bound that includes or excludes the first remaining edge.
    A greedy packing is the starting incumbent and a branch is cut when
    the remaining edges or the uncovered vertices cannot beat it.

    Parameters
    ----------
    masks: Sequence[int]
        Edges as vertex bitmasks, all of size ``k``.
    k: int
    n: int
        Number of vertices the masks live on.
    limit: int, optional
        Stop as soon as a matching of this size is found.

    Returns
    -------
    int
        The matching number, or ``limit`` once it is reached.
    """
    if not masks:
        return 0
    if k == 0:
        return 1
    used = 0
    best = 0
    for mask in masks:
        if not mask & used:
            used |= mask
            best += 1
    if limit is not None and best >= limit:
        return limit
    total = len(masks)
    state = {'best': best}

    def branch(index: int, covered: int, count: int) -> bool:
        if count > state['best']:
            state['best'] = count
            if limit is not None and count >= limit:
                return True
        if index == total:
            return False
        room = (n - popcount(covered)) // k
        if count + min(total - index, room) <= state['best']:
            return False
        mask = masks[index]
        if not mask & covered:
            if branch(index + 1, covered | mask, count + 1):
                return True
        return branch(index + 1, covered, count)

    branch(0, 0, 0)
    if limit is not None:
        return min(state['best'], limit)
    return state['best']


def matching_number(graph: Hypergraph, limit: Optional[int] = None) -> int:
    """
    Exact matching number.

    Parameters
    ----------
    graph: Hypergraph
    limit: int, optional
        Early stop once a matching of this size exists.

    Returns
    -------
    int
    """
    masks = [to_mask(edge) for edge in graph.edges]
    return max_disjoint(masks, graph.k, graph.n, limit)


def is_k_partite(graph: Hypergraph) -> bool:
    return has_homomorphism(graph, single_edge(graph.k))


def _require_graph(graph: Hypergraph) -> None:
    if graph.k != 2:
        raise InvalidHypergraphError(
            f"expected a 2-uniform graph, got k={graph.k}")


def find_induced_long_cycle(graph: Hypergraph) -> Optional[List[int]]:
    """
    Induced cycle of length at least 4, or None when the graph is chordal.

    Cycles are generated from their smallest vertex with neighbours tried
    in ascending order, so the first cycle found is the lexicographically
    least vertex sequence.

    Parameters
    ----------
    graph: Hypergraph
        2-uniform.

    Returns
    -------
    List[int], optional
        Vertices in cycle order, starting at the smallest one.
    """
    _require_graph(graph)
    adjacent = graph.neighbours()

    def walk(path: List[int]) -> Optional[List[int]]:
        start, last = path[0], path[-1]
        inner = path[1:-1]
        for w in sorted(adjacent[last]):
            if w <= start or w in path:
                continue
            if any(w in adjacent[u] for u in inner):
                continue
            if start in adjacent[w]:
                if len(path) + 1 >= 4:
                    return path + [w]
                continue
            found = walk(path + [w])
            if found is not None:
                return found
        return None

    for start in range(graph.n):
        for second in sorted(adjacent[start]):
            if second <= start:
                continue
            found = walk([start, second])
            if found is not None:
                return found
    return None


def find_clique(graph: Hypergraph, size: int) -> Optional[List[int]]:
    """
    Lexicographically least clique with exactly ``size`` vertices.

    Parameters
    ----------
    graph: Hypergraph
        2-uniform.
    size: int

    Returns
    -------
    List[int], optional
    """
    _require_graph(graph)
    if size <= 0:
        return []
    adjacent = graph.neighbours()

    def grow(clique: List[int], pool: List[int]) -> Optional[List[int]]:
        if len(clique) == size:
            return clique
        if len(clique) + len(pool) < size:
            return None
        for i, v in enumerate(pool):
            found = grow(clique + [v],
                         [u for u in pool[i + 1:] if u in adjacent[v]])
            if found is not None:
                return found
        return None

    return grow([], list(range(graph.n)))
