from dataclasses import dataclass
from typing import FrozenSet, List, Optional, Set, Tuple

from src.errors import PreconditionError
from src.homomorphism import search_maps
from src.hypergraph import Edge, Hypergraph, make_edge
from src.partition import PartitionedHypergraph


@dataclass(frozen=True)
class Copy:
    """
    One copy of a pattern: ``roles[i]`` hosts pattern vertex ``i``.

    Two embeddings differing by an automorphism of the pattern produce the
    same vertex set and the same edge set, so those two sets identify the
    copy.
    """
    roles: Tuple[int, ...]
    edges: FrozenSet[Edge]

    @property
    def vertices(self) -> FrozenSet[int]:
        return frozenset(self.roles)

    def key(self) -> Tuple[FrozenSet[int], FrozenSet[Edge]]:
        return self.vertices, self.edges


def search_order(pattern: Hypergraph) -> List[int]:
    """Pattern vertices ordered so each one shares an edge with earlier ones
    whenever possible."""
    order: List[int] = []
    seen: Set[int] = set()
    for root in range(pattern.n):
        if root in seen:
            continue
        queue = [root]
        seen.add(root)
        while queue:
            v = queue.pop(0)
            order.append(v)
            for edge in pattern.edges:
                if v in edge:
                    for u in edge:
                        if u not in seen:
                            seen.add(u)
                            queue.append(u)
    return order


def automorphisms(pattern: Hypergraph) -> List[Tuple[int, ...]]:
    """
    All automorphisms by brute-force search.

    Parameters
    ----------
    pattern: Hypergraph

    Returns
    -------
    List[Tuple[int, ...]]
    """
    degrees = pattern.degrees()
    candidates = [[u for u in range(pattern.n) if degrees[u] == degrees[v]]
                  for v in range(pattern.n)]
    return list(search_maps(pattern, pattern, injective=True,
                            candidates=candidates))


def enumerate_copies(graph: Hypergraph, pattern: Hypergraph,
                     canonical_only: bool = False,
                     partition: Optional[PartitionedHypergraph] = None
                     ) -> List[Copy]:
    """
    Copies of ``pattern`` in ``graph``, each reported once.

    Parameters
    ----------
    graph: Hypergraph
    pattern: Hypergraph
    canonical_only: bool
        Keep only copies placing pattern vertex ``i`` in part ``V_i``.
    partition: PartitionedHypergraph, optional
        Required with ``canonical_only``; its parts are indexed by the
        pattern's vertices.

    Returns
    -------
    List[Copy]
        In order of discovery, which is deterministic.
    """
    candidates = None
    if canonical_only:
        if partition is None:
            raise PreconditionError("canonical copies need a partition")
        if partition.pattern.n != pattern.n:
            raise PreconditionError(
                f"partition has {partition.pattern.n} parts, pattern has "
                f"{pattern.n} vertices")
        candidates = [partition.part(role) for role in range(pattern.n)]
    if pattern.n > graph.n:
        return []
    if not canonical_only and _is_perfect_matching(pattern):
        return _matching_copies(graph, pattern)
    copies: List[Copy] = []
    seen = set()
    for mapping in search_maps(pattern, graph, injective=True,
                               candidates=candidates,
                               order=search_order(pattern)):
        edges = frozenset(make_edge(mapping[v] for v in edge)
                          for edge in pattern.edges)
        copy = Copy(mapping, edges)
        key = copy.key()
        if key not in seen:
            seen.add(key)
            copies.append(copy)
    return copies


def _is_perfect_matching(pattern: Hypergraph) -> bool:
    return (len(pattern) > 0
            and all(d == 1 for d in pattern.degrees()))


def _matching_copies(graph: Hypergraph, pattern: Hypergraph) -> List[Copy]:
    """Copies of a matching pattern: sets of pairwise disjoint edges."""
    copies: List[Copy] = []
    size = len(pattern)

    def pick(start: int, chosen: List[Edge], covered: Set[int]) -> None:
        if len(chosen) == size:
            roles = [0] * pattern.n
            for own, image in zip(pattern.edges, chosen):
                for u, v in zip(own, image):
                    roles[u] = v
            copies.append(Copy(tuple(roles), frozenset(chosen)))
            return
        for i in range(start, len(graph.edges)):
            edge = graph.edges[i]
            if covered.isdisjoint(edge):
                pick(i + 1, chosen + [edge], covered | set(edge))

    pick(0, [], set())
    return copies
