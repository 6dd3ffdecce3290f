import logging
from dataclasses import dataclass
from itertools import combinations
from typing import (Dict, Iterator, List, Optional, Sequence,
                    Set, Tuple)

from src.errors import InvalidHypergraphError, PreconditionError
from src.hypergraph import Hypergraph, induced_subgraph, relabel

logger = logging.getLogger(__name__)

MAX_PATTERN_VERTICES = 12


@dataclass(frozen=True)
class Homomorphism:
    source: Hypergraph
    target: Hypergraph
    mapping: Tuple[int, ...]

    def __post_init__(self):
        if not is_homomorphism(self.source, self.target, self.mapping):
            raise AssertionError(f"map {self.mapping} is not a homomorphism")

    def image(self, vertex: int) -> int:
        return self.mapping[vertex]

    def is_surjective(self) -> bool:
        return set(self.mapping) == set(range(self.target.n))


def is_homomorphism(source: Hypergraph, target: Hypergraph,
                    mapping: Sequence[int]) -> bool:
    if len(mapping) != source.n:
        return False
    if any(not 0 <= m < target.n for m in mapping):
        return False
    for edge in source.edges:
        image = {mapping[v] for v in edge}
        if len(image) != source.k or tuple(sorted(image)) not in target:
            return False
    return True


def _subset_table(target: Hypergraph) -> Set[Tuple[int, ...]]:
    table = set()
    for edge in target.edges:
        for size in range(1, target.k + 1):
            table.update(combinations(edge, size))
    return table


def degree_order(graph: Hypergraph) -> List[int]:
    """
    Vertices in assignment order for :func:`search_maps`.

    The next vertex is the one sharing the most edges with the vertices
    already placed, ties going to the higher degree and then the lower id.
    Each component therefore starts at its busiest vertex.

    Parameters
    ----------
    graph: Hypergraph

    Returns
    -------
    List[int]
    """
    degrees = graph.degrees()
    incident = graph.incident()
    links = [0] * graph.n
    remaining = set(range(graph.n))
    order: List[int] = []
    while remaining:
        v = min(remaining, key=lambda u: (-links[u], -degrees[u], u))
        order.append(v)
        remaining.discard(v)
        for e in incident[v]:
            for u in graph.edges[e]:
                if u in remaining:
                    links[u] += 1
    return order


def search_maps(source: Hypergraph, target: Hypergraph,
                injective: bool = False,
                candidates: Optional[Sequence[Sequence[int]]] = None,
                order: Optional[Sequence[int]] = None
                ) -> Iterator[Tuple[int, ...]]:
    """
    Enumerate edge-preserving vertex maps by backtracking.

    Source vertices are assigned in ``order`` (:func:`degree_order` by
    default) and candidate images are tried in ascending order. After each
    assignment the already mapped part of every incident source edge must
    consist of distinct vertices lying inside a single target edge.

    Parameters
    ----------
    source: Hypergraph
    target: Hypergraph
    injective: bool
        Require distinct images for all vertices (copies, isomorphisms).
    candidates: Sequence[Sequence[int]], optional
        Allowed images per source vertex.
    order: Sequence[int], optional
        Assignment order of the source vertices.

    Returns
    -------
    Iterator[Tuple[int, ...]]
        Maps as tuples indexed by source vertex.
    """
    if source.k != target.k:
        raise InvalidHypergraphError(
            f"uniformity mismatch: {source.k} vs {target.k}")
    if order is None:
        order = degree_order(source)
    position = {v: p for p, v in enumerate(order)}
    subsets = _subset_table(target)
    checks: List[List[Tuple[int, ...]]] = [[] for _ in order]
    for edge in source.edges:
        for v in edge:
            p = position[v]
            checks[p].append(tuple(u for u in edge if position[u] <= p))
    mapping = [-1] * source.n
    used = [False] * target.n
    everything = range(target.n)

    def consistent(p: int) -> bool:
        for prefix in checks[p]:
            images = [mapping[u] for u in prefix]
            if len(set(images)) != len(images):
                return False
            if tuple(sorted(images)) not in subsets:
                return False
        return True

    def extend(p: int) -> Iterator[Tuple[int, ...]]:
        if p == len(order):
            yield tuple(mapping)
            return
        v = order[p]
        for c in (candidates[v] if candidates is not None else everything):
            if injective and used[c]:
                continue
            mapping[v] = c
            if consistent(p):
                used[c] = True
                yield from extend(p + 1)
                used[c] = False
        mapping[v] = -1

    yield from extend(0)


def find_homomorphism(source: Hypergraph,
                      target: Hypergraph) -> Optional[Homomorphism]:
    """
    First homomorphism ``source -> target`` in search order, if any.

    Parameters
    ----------
    source: Hypergraph
    target: Hypergraph

    Returns
    -------
    Homomorphism, optional
    """
    for mapping in search_maps(source, target):
        return Homomorphism(source, target, mapping)
    return None


def has_homomorphism(source: Hypergraph, target: Hypergraph) -> bool:
    return find_homomorphism(source, target) is not None


def is_isomorphic(first: Hypergraph, second: Hypergraph) -> bool:
    """
    Isomorphism test by backtracking, images restricted to equal degree.

    Parameters
    ----------
    first: Hypergraph
    second: Hypergraph

    Returns
    -------
    bool
    """
    if (first.k, first.n, len(first)) != (second.k, second.n, len(second)):
        return False
    first_degrees = first.degrees()
    second_degrees = second.degrees()
    if sorted(first_degrees) != sorted(second_degrees):
        return False
    by_degree: Dict[int, List[int]] = {}
    for v, d in enumerate(second_degrees):
        by_degree.setdefault(d, []).append(v)
    candidates = [by_degree[d] for d in first_degrees]
    order = sorted(range(first.n), key=lambda v: -first_degrees[v])
    for _ in search_maps(first, second, injective=True,
                         candidates=candidates, order=order):
        return True
    return False


def _check_size(graph: Hypergraph) -> None:
    if graph.n > MAX_PATTERN_VERTICES:
        raise PreconditionError(
            f"pattern has {graph.n} vertices, core search supports at most "
            f"{MAX_PATTERN_VERTICES}")


def _labelled_prefix(graph: Hypergraph,
                     placed: Tuple[int, ...]) -> Tuple[Tuple[int, ...], ...]:
    label = {v: i for i, v in enumerate(placed)}
    done = sorted(tuple(sorted((label[v] for v in edge), reverse=True))
                  for edge in graph.edges
                  if all(v in label for v in edge))
    return tuple(done) + ((graph.n,),)


def canonical_form(graph: Hypergraph) -> Hypergraph:
    """
    Relabelling of ``graph`` that is equal for all isomorphic inputs.

    Edges are compared largest vertex first. Of all relabellings the one
    with the least edge list in that order is returned. Labels are handed
    out one at a time and only the partial labellings whose completed
    edges already compare least are extended.

    Parameters
    ----------
    graph: Hypergraph
        At most ``MAX_PATTERN_VERTICES`` vertices.

    Returns
    -------
    Hypergraph
    """
    _check_size(graph)
    states: List[Tuple[int, ...]] = [()]
    for _ in range(graph.n):
        best = None
        survivors: List[Tuple[int, ...]] = []
        for state in states:
            for v in range(graph.n):
                if v in state:
                    continue
                placed = state + (v,)
                key = _labelled_prefix(graph, placed)
                if best is None or key < best:
                    best, survivors = key, [placed]
                elif key == best:
                    survivors.append(placed)
        states = survivors
    return relabel(graph, {v: i for i, v in enumerate(states[0])})


def core_vertices(pattern: Hypergraph,
                  check_unique: bool = True) -> Tuple[int, ...]:
    """
    Lexicographically least minimum vertex set U with F -> F[U].

    Parameters
    ----------
    pattern: Hypergraph
    check_unique: bool
        Also verify that every other minimum candidate induces an
        isomorphic subgraph.

    Returns
    -------
    Tuple[int, ...]
    """
    _check_size(pattern)
    if pattern.n == 0:
        return ()
    if not pattern.edges:
        return (0,)
    for size in range(pattern.k, pattern.n + 1):
        found: List[Tuple[int, ...]] = []
        for subset in combinations(range(pattern.n), size):
            candidate, _ = induced_subgraph(pattern, subset)
            if has_homomorphism(pattern, candidate):
                found.append(subset)
                if not check_unique:
                    break
        if found:
            if check_unique:
                first, _ = induced_subgraph(pattern, found[0])
                for other in found[1:]:
                    graph, _ = induced_subgraph(pattern, other)
                    if not is_isomorphic(first, graph):
                        raise AssertionError(
                            f"non-isomorphic minimum retracts {found[0]} "
                            f"and {other}")
            logger.debug("core of %s has %d vertices", pattern, size)
            return found[0]
    raise AssertionError("the pattern itself is always a retract candidate")


def core(pattern: Hypergraph) -> Hypergraph:
    """
    The core of a pattern in :func:`canonical_form`.

    Isomorphic patterns, and more generally hom-equivalent ones, get equal
    results.

    Parameters
    ----------
    pattern: Hypergraph

    Returns
    -------
    Hypergraph
    """
    subset = core_vertices(pattern)
    induced, _ = induced_subgraph(pattern, subset)
    result = canonical_form(induced)
    if not has_homomorphism(pattern, result):
        raise AssertionError("pattern does not map onto its core")
    return result


def core_size_exhaustive(pattern: Hypergraph) -> int:
    """
    Minimum vertex count over all subgraphs (any vertex subset, any subset
    of its induced edges) that the pattern maps into.

    Returns
    -------
    int
    """
    _check_size(pattern)
    if pattern.n == 0:
        return 0
    if not pattern.edges:
        return 1
    for size in range(pattern.k, pattern.n + 1):
        for subset in combinations(range(pattern.n), size):
            induced, _ = induced_subgraph(pattern, subset)
            edges = induced.edges
            for count in range(len(edges) + 1):
                for chosen in combinations(edges, count):
                    if has_homomorphism(pattern,
                                        induced.spanning(chosen)):
                        return size
    return pattern.n


def is_core(graph: Hypergraph) -> bool:
    """
    True iff every endomorphism is an automorphism.

    Equivalently no homomorphism into the graph with one vertex removed.

    Parameters
    ----------
    graph: Hypergraph

    Returns
    -------
    bool
    """
    _check_size(graph)
    if graph.n <= 1:
        return True
    for v in range(graph.n):
        rest = [u for u in range(graph.n) if u != v]
        smaller, _ = induced_subgraph(graph, rest)
        if has_homomorphism(graph, smaller):
            return False
    return True


def hom_equivalent(first: Hypergraph, second: Hypergraph) -> bool:
    if first.k != second.k:
        raise InvalidHypergraphError(
            f"uniformity mismatch: {first.k} vs {second.k}")
    return has_homomorphism(first, second) and has_homomorphism(second, first)


def select_hom_minimal(family: Sequence[Hypergraph]) -> Hypergraph:
    """
    A member F such that F' -> F implies F -> F' for every member F'.

    Ties are broken by list order.

    Parameters
    ----------
    family: Sequence[Hypergraph]

    Returns
    -------
    Hypergraph
    """
    if not family:
        raise PreconditionError("empty pattern family")
    if len({member.k for member in family}) != 1:
        raise InvalidHypergraphError("family members differ in uniformity")
    for candidate in family:
        if all(not has_homomorphism(other, candidate)
               or has_homomorphism(candidate, other) for other in family):
            return candidate
    raise AssertionError("a finite family always has a minimal member")

