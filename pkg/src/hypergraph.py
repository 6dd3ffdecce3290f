from dataclasses import dataclass, field
from itertools import combinations, product
from typing import (Dict, FrozenSet, Iterable, List, Mapping, Optional,
                    Sequence, Tuple)

from src.errors import InvalidHypergraphError

Edge = Tuple[int, ...]


def make_edge(vertices: Iterable[int]) -> Edge:
    return tuple(sorted(vertices))


@dataclass(frozen=True)
class Hypergraph:
    """
    Immutable k-uniform hypergraph on vertex ids ``0..n-1``.

    Edges are stored as sorted tuples and the edge sequence itself is kept
    sorted, which gives every instance a canonical serialization.

    Parameters
    ----------
    k: int
        Uniformity, at least 1.
    n: int
        Vertex count; isolated vertices are allowed.
    edges: Iterable[Iterable[int]]
        Edge list in any order; duplicates are rejected.
    """
    k: int
    n: int
    edges: Tuple[Edge, ...] = ()
    _edge_set: FrozenSet[Edge] = field(init=False, repr=False,
                                       compare=False, hash=False)

    def __post_init__(self):
        if self.k < 1:
            raise InvalidHypergraphError(f"uniformity must be >= 1: {self.k}")
        if self.n < 0:
            raise InvalidHypergraphError(f"negative vertex count: {self.n}")
        normalized = []
        for raw in self.edges:
            edge = make_edge(raw)
            if len(edge) != self.k or len(set(edge)) != self.k:
                raise InvalidHypergraphError(
                    f"edge {raw} does not have {self.k} distinct vertices")
            if edge[0] < 0 or edge[-1] >= self.n:
                raise InvalidHypergraphError(
                    f"edge {raw} uses a vertex outside 0..{self.n - 1}")
            normalized.append(edge)
        edge_set = frozenset(normalized)
        if len(edge_set) != len(normalized):
            raise InvalidHypergraphError("duplicate edges")
        object.__setattr__(self, 'edges', tuple(sorted(normalized)))
        object.__setattr__(self, '_edge_set', edge_set)

    def __len__(self) -> int:
        return len(self.edges)

    def __contains__(self, edge: Iterable[int]) -> bool:
        return make_edge(edge) in self._edge_set

    @property
    def edge_set(self) -> FrozenSet[Edge]:
        return self._edge_set

    @property
    def vertices(self) -> range:
        return range(self.n)

    def covered_vertices(self) -> List[int]:
        return sorted({v for edge in self.edges for v in edge})

    def degrees(self) -> List[int]:
        degree = [0] * self.n
        for edge in self.edges:
            for v in edge:
                degree[v] += 1
        return degree

    def edge_index(self) -> Dict[Edge, int]:
        return {edge: i for i, edge in enumerate(self.edges)}

    def incident(self) -> List[List[int]]:
        """Edge indices incident to each vertex."""
        incidence: List[List[int]] = [[] for _ in range(self.n)]
        for i, edge in enumerate(self.edges):
            for v in edge:
                incidence[v].append(i)
        return incidence

    def neighbours(self) -> List[FrozenSet[int]]:
        adjacent: List[set] = [set() for _ in range(self.n)]
        for edge in self.edges:
            for v in edge:
                adjacent[v].update(edge)
        return [frozenset(a - {v}) for v, a in enumerate(adjacent)]

    def with_edges(self, edges: Iterable[Iterable[int]]) -> 'Hypergraph':
        return Hypergraph(self.k, self.n, list(self.edges) + list(edges))

    def without_edges(self, edges: Iterable[Iterable[int]]) -> 'Hypergraph':
        removed = {make_edge(e) for e in edges}
        return Hypergraph(self.k, self.n,
                          [e for e in self.edges if e not in removed])

    def spanning(self, edges: Iterable[Iterable[int]]) -> 'Hypergraph':
        """Spanning subgraph on the same vertex set with the given edges."""
        return Hypergraph(self.k, self.n, edges)


def shadow(graph: Hypergraph, s: int) -> Hypergraph:
    """
    The s-shadow: every s-subset lying inside some edge.

    Parameters
    ----------
    graph: Hypergraph
    s: int
        Shadow size, ``2 <= s <= k``.

    Returns
    -------
    Hypergraph
    """
    if not 2 <= s <= graph.k:
        raise InvalidHypergraphError(
            f"shadow size {s} outside 2..{graph.k}")
    if s == graph.k:
        return graph
    subsets = {sub for edge in graph.edges for sub in combinations(edge, s)}
    return Hypergraph(s, graph.n, subsets)


def link(graph: Hypergraph, subset: Iterable[int]) -> Hypergraph:
    """
    Link of a vertex set: the remainders of the edges containing it.

    Parameters
    ----------
    graph: Hypergraph
    subset: Iterable[int]
        Vertex set S with ``|S| < k``.

    Returns
    -------
    Hypergraph
        (k - |S|)-graph on the same vertex set.
    """
    members = frozenset(subset)
    if len(members) >= graph.k:
        raise InvalidHypergraphError(
            f"link needs |S| < k, got |S| = {len(members)}")
    remainders = [tuple(v for v in edge if v not in members)
                  for edge in graph.edges if members.issubset(edge)]
    return Hypergraph(graph.k - len(members), graph.n, remainders)


def blowup(graph: Hypergraph, b: int) -> Hypergraph:
    """
    b-blowup; clone ``i`` of vertex ``v`` gets id ``v * b + i``.

    Parameters
    ----------
    graph: Hypergraph
    b: int
        Clones per vertex, at least 1.

    Returns
    -------
    Hypergraph
    """
    if b < 1:
        raise InvalidHypergraphError(f"blowup factor must be >= 1: {b}")
    edges = []
    for edge in graph.edges:
        clone_sets = [[v * b + i for i in range(b)] for v in edge]
        edges.extend(product(*clone_sets))
    return Hypergraph(graph.k, graph.n * b, edges)


def blowup_projection(graph: Hypergraph, b: int) -> List[int]:
    """Homomorphism from the b-blowup back onto ``graph``."""
    return [v // b for v in range(graph.n * b)]


def induced_subgraph(graph: Hypergraph,
                     vertices: Sequence[int]) -> Tuple[Hypergraph, List[int]]:
    """
    Induced subgraph relabelled onto ``0..len(vertices)-1``.

    Returns
    -------
    Tuple[Hypergraph, List[int]]
        The subgraph and the list mapping new ids back to old ids.
    """
    order = sorted(vertices)
    position = {v: i for i, v in enumerate(order)}
    edges = [tuple(position[v] for v in edge) for edge in graph.edges
             if all(v in position for v in edge)]
    return Hypergraph(graph.k, len(order), edges), order


def relabel(graph: Hypergraph, mapping: Mapping[int, int],
            n: Optional[int] = None) -> Hypergraph:
    """
    Apply an injective vertex map to every edge.

    Parameters
    ----------
    graph: Hypergraph
    mapping: Mapping[int, int]
        Old id to new id; must be injective on covered vertices.
    n: int, optional
        Vertex count of the result, ``graph.n`` by default.
    """
    edges = [tuple(mapping[v] for v in edge) for edge in graph.edges]
    return Hypergraph(graph.k, graph.n if n is None else n, edges)


def complete_graph(n: int, k: int) -> Hypergraph:
    return Hypergraph(k, n, combinations(range(n), k))


def cycle_graph(length: int) -> Hypergraph:
    if length < 3:
        raise InvalidHypergraphError(f"cycle length must be >= 3: {length}")
    return Hypergraph(2, length,
                      [(i, (i + 1) % length) for i in range(length)])


def single_edge(k: int) -> Hypergraph:
    return Hypergraph(k, k, [tuple(range(k))])


def matching_graph(r: int, k: int) -> Hypergraph:
    """M_r: r pairwise disjoint k-edges."""
    return Hypergraph(k, r * k,
                      [tuple(range(i * k, (i + 1) * k)) for i in range(r)])


def sunflower(t: int, k: int, r: int) -> Hypergraph:
    """
    r k-edges sharing exactly the same t-set ``0..t-1``.

    Parameters
    ----------
    t: int
        Kernel size, ``0 <= t < k``.
    k: int
    r: int
        Number of petals.

    Returns
    -------
    Hypergraph
    """
    if not 0 <= t < k:
        raise InvalidHypergraphError(f"kernel size {t} outside 0..{k - 1}")
    petal = k - t
    kernel = tuple(range(t))
    edges = [kernel + tuple(range(t + i * petal, t + (i + 1) * petal))
             for i in range(r)]
    return Hypergraph(k, t + r * petal, edges)


def intersecting_pair(t: int, k: int) -> Hypergraph:
    """E_t^(k): two k-edges meeting in exactly t vertices."""
    return sunflower(t, k, 2)
