import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Dict, List, Sequence, Tuple

from src.copies import enumerate_copies
from src.errors import GadgetVerificationError, PreconditionError
from src.hypergraph import Edge, Hypergraph, cycle_graph, make_edge

logger = logging.getLogger(__name__)

Triangle = Tuple[int, int, int]

# Mixed-sign gadget, drawing labels a1..a12.
_MIXED_EDGES = [
    (1, 2), (2, 3), (3, 1),
    (2, 5), (5, 3),
    (2, 4), (4, 1),
    (1, 6), (6, 3),
    (5, 7), (7, 3),
    (3, 8), (8, 6),
    (5, 10), (10, 7),
    (6, 11), (11, 8),
    (2, 9), (9, 4), (4, 12), (12, 9),
]
_MIXED_COLOURS = {1: 1, 2: 2, 3: 3, 4: 3, 5: 1, 6: 2, 7: 2, 8: 1,
                  9: 1, 10: 3, 11: 3, 12: 2}

# Single-sign gadget: a fan of nine triangles around hub 1 whose rim runs
# 2 3 5 6 7 8 10 11 12 13. The marked triangles hang off rim edges 2-3,
# 12-13 and 7-8 through apexes 4, 14 and 9. Every rim edge other than the
# primaries has an endpoint outside the marked triangles.
_FAN_RIM = (2, 3, 5, 6, 7, 8, 10, 11, 12, 13)
_FAN_EDGES = ([(1, v) for v in _FAN_RIM]
              + list(zip(_FAN_RIM, _FAN_RIM[1:]))
              + [(2, 4), (3, 4), (12, 14), (13, 14), (7, 9), (8, 9)])
_FAN_COLOURS = {1: 3, 4: 3, 9: 3, 14: 3,
                **{v: 1 + i % 2 for i, v in enumerate(_FAN_RIM)}}

_LAYOUT = {
    1: {
        'labels': tuple(range(1, 15)),
        'edges': _FAN_EDGES,
        'colours': _FAN_COLOURS,
        'triangles': ((2, 3, 4), (12, 13, 14), (7, 8, 9)),
        'primary': ((2, 3), (12, 13), (7, 8)),
        'red': ((1, 3, 5), (1, 6, 7), (1, 8, 10), (1, 11, 12)),
        'blue': ((1, 2, 3), (1, 5, 6), (1, 7, 8), (1, 10, 11), (1, 12, 13)),
        'bound': 4,
    },
    2: {
        'labels': tuple(range(1, 13)),
        'edges': _MIXED_EDGES,
        'colours': _MIXED_COLOURS,
        'triangles': ((5, 7, 10), (6, 8, 11), (4, 9, 12)),
        'primary': ((5, 7), (6, 8), (4, 9)),
        'red': ((2, 5, 3), (2, 4, 1), (1, 6, 3)),
        'blue': ((1, 2, 3), (5, 7, 3), (3, 8, 6), (2, 9, 4)),
        'bound': 3,
    },
}


@dataclass(frozen=True)
class Gadget:
    """
    Clause gadget: a 3-colourable graph with three marked triangles.

    Vertex ``i`` carries label ``labels[i]``; ``colouring[i]`` is
    its colour in ``{1, 2, 3}``. ``primary[j]`` is an edge of
    ``triangles[j]``. Every triangle-destroying deletion set uses at
    least ``bound`` internal edges, and ``bound + 1`` when it keeps all
    three primary edges.
    """
    kind: int
    graph: Hypergraph
    labels: Tuple[int, ...]
    triangles: Tuple[Triangle, Triangle, Triangle]
    primary: Tuple[Edge, Edge, Edge]
    colouring: Tuple[int, ...]
    bound: int
    red: Tuple[Triangle, ...]
    blue: Tuple[Triangle, ...]

    def triangle_edges(self, j: int) -> List[Edge]:
        return [make_edge(pair) for pair in combinations(self.triangles[j], 2)]

    def frame_edges(self) -> List[Edge]:
        """Edges of the three marked triangles."""
        return sorted({e for j in range(3) for e in self.triangle_edges(j)})

    def internal_edges(self) -> List[Edge]:
        frame = set(self.frame_edges())
        return [e for e in self.graph.edges if e not in frame]

    def colour_pair(self, edge: Edge) -> Tuple[int, int]:
        return tuple(sorted(self.colouring[v] for v in edge))  # type: ignore

    def swapped_colouring(self) -> Tuple[int, ...]:
        """The stored colouring with colours 2 and 3 exchanged."""
        swap = {1: 1, 2: 3, 3: 2}
        return tuple(swap[c] for c in self.colouring)

    def all_triangles(self) -> List[Edge]:
        return _triangles(self.graph)


def _triangles(graph: Hypergraph) -> List[Edge]:
    return sorted(make_edge(copy.vertices)
                  for copy in enumerate_copies(graph, cycle_graph(3)))


def _triangle_edges(triangle: Sequence[int]) -> List[Edge]:
    return [make_edge(pair) for pair in combinations(triangle, 2)]


def _hits_all(deleted: set, triangles: Sequence[Edge]) -> bool:
    return all(any(e in deleted for e in _triangle_edges(t))
               for t in triangles)


def _fail(gadget: Gadget, message: str) -> None:
    raise GadgetVerificationError(
        f"gadget J{gadget.kind} transcription rejected: {message}")


def verify_gadget_claims(gadget: Gadget) -> None:
    """
    Exhaustively check the deletion and colouring properties of a gadget.

    Isolation: every internal edge has an endpoint outside the marked
    triangles, so copies sharing variable triangles never share an
    internal edge or close a triangle between them.
    Deletion lower bound: no set of fewer than ``bound`` internal edges,
    together with every frame edge, destroys all triangles; with the
    primary edges kept, fewer than ``bound + 1`` never suffices.
    Deletion upper bound: for every choice of one edge per marked
    triangle that picks at least one primary edge, some set of exactly
    ``bound`` internal edges completes a triangle-destroying set.
    Colouring: the stored colouring and its 2/3 swap are proper, and the
    primary edges get the pairs ``{1, 2}`` (and ``{1, 3}`` for the third
    primary edge of the second gadget).

    Parameters
    ----------
    gadget: Gadget

    Returns
    -------
    None
    """
    graph = gadget.graph
    for j in range(3):
        for edge in gadget.triangle_edges(j):
            if edge not in graph:
                _fail(gadget, f"triangle {j + 1} misses edge {edge}")
        if gadget.primary[j] not in gadget.triangle_edges(j):
            _fail(gadget, f"primary edge {j + 1} is not in its triangle")

    internal = gadget.internal_edges()
    marked = {v for triangle in gadget.triangles for v in triangle}
    for edge in internal:
        if set(edge) <= marked:
            _fail(gadget, f"internal edge {edge} joins two marked triangles")
    frame = set(gadget.frame_edges())
    kept_primary = frame - set(gadget.primary)
    triangles = gadget.all_triangles()
    bound = gadget.bound
    for size in range(bound + 1):
        for chosen in combinations(internal, size):
            if size < bound and _hits_all(frame | set(chosen), triangles):
                _fail(gadget, f"{size} internal edges {chosen} suffice")
            if _hits_all(kept_primary | set(chosen), triangles):
                _fail(gadget, f"{size} internal edges {chosen} suffice "
                              f"without deleting a primary edge")

    options = [gadget.triangle_edges(j) for j in range(3)]
    completions = list(combinations(internal, bound))
    for picked in product(*options):
        if not any(picked[j] == gadget.primary[j] for j in range(3)):
            continue
        if not any(_hits_all(set(picked) | set(extra), triangles)
                   for extra in completions):
            _fail(gadget, f"no {bound} internal edges complete {picked}")

    _verify_witness_triangles(gadget, internal)
    _verify_colouring(gadget)


def _verify_witness_triangles(gadget: Gadget, internal: List[Edge]) -> None:
    allowed_blue = set(internal) | set(gadget.primary)
    for name, listed, allowed, count in (
            ('red', gadget.red, set(internal), gadget.bound),
            ('blue', gadget.blue, allowed_blue, gadget.bound + 1)):
        if len(listed) != count:
            _fail(gadget, f"expected {count} {name} triangles")
        used: set = set()
        for triangle in listed:
            edges = _triangle_edges(triangle)
            if not set(edges) <= allowed:
                _fail(gadget, f"{name} triangle {triangle} uses a "
                              f"forbidden edge")
            if used & set(edges):
                _fail(gadget, f"{name} triangles are not edge-disjoint")
            used.update(edges)


def _verify_colouring(gadget: Gadget) -> None:
    expected_third = (1, 2) if gadget.kind == 1 else (1, 3)
    for colouring in (gadget.colouring, gadget.swapped_colouring()):
        for edge in gadget.graph.edges:
            if colouring[edge[0]] == colouring[edge[1]]:
                _fail(gadget, f"colouring is not proper on {edge}")
    pairs = [gadget.colour_pair(e) for e in gadget.primary]
    if pairs != [(1, 2), (1, 2), expected_third]:
        _fail(gadget, f"primary edges are coloured {pairs}")


@lru_cache(maxsize=None)
def build_gadget(kind: int) -> Gadget:
    """
    Build and verify clause gadget ``kind`` (1 or 2).

    Gadget 1 serves clauses whose literals all share a sign, gadget 2
    the mixed ones.

    Parameters
    ----------
    kind: int

    Returns
    -------
    Gadget
    """
    if kind not in _LAYOUT:
        raise PreconditionError(f"gadget type must be 1 or 2, got {kind}")
    layout = _LAYOUT[kind]
    labels = layout['labels']
    position: Dict[int, int] = {label: i for i, label in enumerate(labels)}

    def vertices(group):
        return tuple(position[label] for label in group)

    gadget = Gadget(
        kind=kind,
        graph=Hypergraph(2, len(labels),
                         [vertices(e) for e in layout['edges']]),
        labels=labels,
        triangles=tuple(vertices(t) for t in layout['triangles']),
        primary=tuple(make_edge(vertices(e)) for e in layout['primary']),
        colouring=tuple(layout['colours'][label] for label in labels),
        bound=layout['bound'],
        red=tuple(vertices(t) for t in layout['red']),
        blue=tuple(vertices(t) for t in layout['blue']),
    )
    verify_gadget_claims(gadget)
    logger.debug("gadget J%d verified: %d vertices, %d edges", kind,
                 gadget.graph.n, len(gadget.graph))
    return gadget
