import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple, Union

from src.cnf import CnfFormula
from src.errors import PreconditionError
from src.homomorphism import core, is_isomorphic, select_hom_minimal
from src.hypergraph import (Edge, Hypergraph, blowup, complete_graph,
                            cycle_graph, make_edge)
from src.partition import PartitionedHypergraph

logger = logging.getLogger(__name__)

Instance = Union[Hypergraph, PartitionedHypergraph]
Source = Union[Hypergraph, PartitionedHypergraph, CnfFormula]

MEASURES = ('rem', 'rem-partite', 'ex', 'sat', 'maxsat')


@dataclass(frozen=True)
class Relation:
    """
    Predicted relation between a measure of the produced instance and a
    measure of the source.

    ``op == 'eq'``: ``out == scale * in + offset``.
    ``op == 'ge'``: ``out >= scale * in + offset``.
    ``op == 'iff'``: ``out >= offset`` always, with equality exactly when
    the source measure (a satisfiability flag) is true.
    """
    text: str
    measure_in: str
    measure_out: str
    op: str = 'eq'
    scale: int = 1
    offset: int = 0

    def __post_init__(self):
        if self.op not in ('eq', 'ge', 'iff'):
            raise ValueError(f"unknown relation operator {self.op!r}")
        for measure in (self.measure_in, self.measure_out):
            if measure not in MEASURES:
                raise ValueError(f"unknown measure {measure!r}")

    def expected(self, value_in: int) -> int:
        if self.op == 'iff':
            return self.offset
        return self.scale * value_in + self.offset

    def holds(self, value_out: int, value_in: int) -> bool:
        if self.op == 'eq':
            return value_out == self.expected(value_in)
        if self.op == 'ge':
            return value_out >= self.expected(value_in)
        return value_out >= self.offset \
            and (value_out == self.offset) == bool(value_in)


@dataclass(frozen=True)
class ReductionOutput:
    """
    Produced instance plus what is needed to compare it with its source.

    ``back_map`` sends each produced edge to the source edge it stands
    for, or to ``None`` when the edge can be dropped from a witness.
    ``fresh`` is the half-open id range of vertices added by the
    reduction.
    """
    name: str
    source: Source
    produced: Instance
    relation: Relation
    patterns_in: Tuple[Hypergraph, ...] = ()
    patterns_out: Tuple[Hypergraph, ...] = ()
    back_map: Optional[Dict[Edge, Optional[Edge]]] = None
    fresh: Tuple[int, int] = (0, 0)
    parameters: Dict[str, object] = field(default_factory=dict)

    @property
    def graph(self) -> Hypergraph:
        if isinstance(self.produced, PartitionedHypergraph):
            return self.produced.base
        return self.produced

    def translate_witness(self, witness: Sequence[Edge]) -> Tuple[Edge, ...]:
        """
        Map a witness on the produced instance back to the source.

        Parameters
        ----------
        witness: Sequence[Edge]
            Deletion set (rem relations) or retained edges (ex relations)
            of the produced instance.

        Returns
        -------
        Tuple[Edge, ...]
            Distinct source edges, sorted.
        """
        if self.back_map is None:
            raise PreconditionError(
                f"reduction {self.name} has no witness translation")
        images = set()
        for edge in witness:
            key = make_edge(edge)
            if key not in self.back_map:
                raise PreconditionError(
                    f"edge {key} is not an edge of the produced instance")
            image = self.back_map[key]
            if image is not None:
                images.add(image)
        return tuple(sorted(images))

    def metadata(self) -> Dict[str, object]:
        fields: Dict[str, object] = {
            'reduction': self.name,
            'relation': self.relation.text,
            'measure_in': self.relation.measure_in,
            'measure_out': self.relation.measure_out,
            'op': self.relation.op,
            'scale': self.relation.scale,
            'offset': self.relation.offset,
            'fresh': f"{self.fresh[0]}..{self.fresh[1]}",
        }
        for key, value in sorted(self.parameters.items()):
            if isinstance(value, (bool, int, float, str)):
                fields[f"param.{key}"] = value
        return fields

    def back_map_pairs(self) -> List[Tuple[Edge, Edge]]:
        if self.back_map is None:
            return []
        return [(out, back) for out, back in sorted(self.back_map.items())
                if back is not None]


def _require_triangle_partition(graph: PartitionedHypergraph) -> None:
    pattern = graph.pattern
    if pattern.k != 2 or pattern.n != 3 or len(pattern) != 3:
        raise PreconditionError(
            "expected a 3-partite graph with parts (A, B, C) indexed by a "
            "triangle pattern")


def simplex_reduction(graph: PartitionedHypergraph,
                      k: int) -> ReductionOutput:
    """
    Lift a triangle problem to the complete k-graph on k + 1 vertices.

    Every edge of ``graph`` is extended by the fresh vertices
    ``v_1..v_{k-2}``; every triple of ``A x B x C`` gets one edge per
    fresh vertex, extended by all the other fresh vertices.

    Parameters
    ----------
    graph: PartitionedHypergraph
        Parts ``A, B, C`` are pattern vertices 0, 1, 2.
    k: int
        Target uniformity, at least 3.

    Returns
    -------
    ReductionOutput
    """
    _require_triangle_partition(graph)
    if k < 3:
        raise PreconditionError(f"simplex reduction needs k >= 3, got {k}")
    base = graph.base
    fresh = list(range(base.n, base.n + k - 2))
    back_map: Dict[Edge, Optional[Edge]] = {}
    for edge in base.edges:
        back_map[make_edge(edge + tuple(fresh))] = edge
    a_part, b_part, c_part = (graph.part(role) for role in range(3))
    for a, b, c in product(a_part, b_part, c_part):
        is_triangle = (a, b) in base and (b, c) in base and (a, c) in base
        for i in range(len(fresh)):
            rest = fresh[:i] + fresh[i + 1:]
            edge = make_edge((a, b, c) + tuple(rest))
            back_map[edge] = make_edge((a, b)) if is_triangle else None
    produced = PartitionedHypergraph(
        Hypergraph(k, base.n + k - 2, back_map.keys()),
        complete_graph(k + 1, k),
        graph.parts + tuple(range(3, k + 1)))
    relation = Relation("rem_out = rem_in", 'rem-partite', 'rem-partite')
    logger.debug("simplex reduction: %d -> %d edges", len(base),
                 len(produced.base))
    return ReductionOutput('simplex', graph, produced, relation,
                           (graph.pattern,), (produced.pattern,), back_map,
                           (base.n, base.n + k - 2), {'k': k})


def cycle_reduction(graph: PartitionedHypergraph,
                    length: int) -> ReductionOutput:
    """
    Turn a triangle problem into a canonical cycle problem.

    The parts become ``A, V_1, ..., V_{length-3}, B, C``; each A-B edge
    ``ab`` is replaced by a fresh path from ``a`` to ``b`` of length
    ``length - 2``, all other edges are kept.

    Parameters
    ----------
    graph: PartitionedHypergraph
        Parts ``A, B, C`` are pattern vertices 0, 1, 2.
    length: int
        Cycle length, at least 4.

    Returns
    -------
    ReductionOutput
    """
    _require_triangle_partition(graph)
    if length < 4:
        raise PreconditionError(
            f"cycle reduction needs length >= 4, got {length}")
    base = graph.base
    role = {0: 0, 1: length - 2, 2: length - 1}
    parts = [role[p] for p in graph.parts]
    back_map: Dict[Edge, Optional[Edge]] = {}
    next_vertex = base.n
    for edge in base.edges:
        roles = sorted(graph.roles_of(edge))
        if roles != [0, 1]:
            back_map[edge] = edge
            continue
        a, b = edge if graph.parts[edge[0]] == 0 else edge[::-1]
        inner = list(range(next_vertex, next_vertex + length - 3))
        next_vertex += length - 3
        parts.extend(range(1, length - 2))
        path = [a] + inner + [b]
        for u, v in zip(path, path[1:]):
            back_map[make_edge((u, v))] = edge
    produced = PartitionedHypergraph(
        Hypergraph(2, next_vertex, back_map.keys()),
        cycle_graph(length), tuple(parts))
    relation = Relation("rem_out = rem_in", 'rem-partite', 'rem-partite')
    return ReductionOutput('cycle', graph, produced, relation,
                           (graph.pattern,), (produced.pattern,), back_map,
                           (base.n, next_vertex), {'length': length})


def restricted_pattern(pattern: Hypergraph, length: int,
                       s: int) -> Hypergraph:
    """
    The s-graph on ``0..length-1`` of the restrictions of size ``s``.

    Raises when some edge meets ``0..length-1`` in more than ``s``
    vertices.
    """
    restrictions = set()
    for edge in pattern.edges:
        inner = tuple(v for v in edge if v < length)
        if len(inner) > s:
            raise PreconditionError(
                f"pattern edge {edge} meets the first {length} vertices in "
                f"{len(inner)} > {s} vertices")
        if len(inner) == s:
            restrictions.add(inner)
    return Hypergraph(s, length, restrictions)


def lift_reduction(graph: PartitionedHypergraph, pattern: Hypergraph,
                   length: int, s: int, part_size: Optional[int] = None,
                   full_size: bool = False) -> ReductionOutput:
    """
    Lift a partite s-graph problem to a partite k-graph problem.

    The new parts ``V_length..V_{f-1}`` get ``part_size`` vertices each;
    vertex ``j`` of part ``i`` has id ``n + (i - length) * N + j``.

    Parameters
    ----------
    graph: PartitionedHypergraph
        s-graph partitioned by the restricted pattern on ``0..length-1``.
    pattern: Hypergraph
        The k-graph F on ``0..f-1``.
    length: int
    s: int
    part_size: int, optional
        N, at least ``e(G)``; ``max(1, e(G))`` by default.
    full_size: bool
        Use ``N = n ** s`` instead of the default.

    Returns
    -------
    ReductionOutput
    """
    k = pattern.k
    if not 2 <= s <= k:
        raise PreconditionError(f"need 2 <= s <= k, got s={s}, k={k}")
    if not 1 <= length <= pattern.n:
        raise PreconditionError(
            f"length {length} outside 1..{pattern.n}")
    restricted = restricted_pattern(pattern, length, s)
    if graph.pattern.n != length or graph.pattern.k != s \
            or graph.pattern.edge_set != restricted.edge_set:
        raise PreconditionError(
            f"instance pattern {list(graph.pattern.edges)} differs from the "
            f"restricted pattern {list(restricted.edges)}")
    base = graph.base
    if full_size:
        part_size = base.n ** s
    elif part_size is None:
        part_size = max(1, len(base))
    if part_size < max(1, len(base)):
        raise PreconditionError(
            f"part size {part_size} is smaller than e(G) = {len(base)}")

    parts = list(graph.parts)
    members: Dict[int, List[int]] = {r: graph.part(r) for r in range(length)}
    for i in range(length, pattern.n):
        start = base.n + (i - length) * part_size
        members[i] = list(range(start, start + part_size))
        parts.extend([i] * part_size)
    edges = []
    for f_edge in pattern.edges:
        inner = [i for i in f_edge if i < length]
        outer = [i for i in f_edge if i >= length]
        if len(inner) < s:
            edges.extend(product(*(members[i] for i in f_edge)))
            continue
        for g_edge in graph.edges_between(inner):
            edges.extend(g_edge + rest
                         for rest in product(*(members[i] for i in outer)))
    total = base.n + (pattern.n - length) * part_size
    produced = PartitionedHypergraph(Hypergraph(k, total, edges), pattern,
                                     tuple(parts))
    scale = part_size ** (k - s)
    relation = Relation(f"rem_out = rem_in * {part_size}^{k - s}",
                        'rem-partite', 'rem-partite', scale=scale)
    logger.debug("lift: N=%d, %d -> %d edges", part_size, len(base),
                 len(produced.base))
    return ReductionOutput('lift', graph, produced, relation,
                           (graph.pattern,), (pattern,), None,
                           (base.n, total),
                           {'length': length, 's': s, 'N': part_size})


def blowup_reduction(graph: PartitionedHypergraph,
                     family: Sequence[Hypergraph],
                     b: int) -> ReductionOutput:
    """
    Blow an L-partite instance up for a pattern family whose
    hom-minimal member has core L.

    Only the lower bound ``ex_family(G') >= b^k * ex_L(G)`` is asserted.

    Parameters
    ----------
    graph: PartitionedHypergraph
        Partitioned by L.
    family: Sequence[Hypergraph]
    b: int
        Blowup factor, at least 1.

    Returns
    -------
    ReductionOutput
    """
    if b < 1:
        raise PreconditionError(f"blowup factor must be >= 1, got {b}")
    if not family:
        raise PreconditionError("empty pattern family")
    member = select_hom_minimal(family)
    kernel = core(member)
    if not is_isomorphic(kernel, graph.pattern):
        raise PreconditionError(
            f"instance pattern is not the core {list(kernel.edges)} of the "
            f"hom-minimal family member")
    k = graph.base.k
    produced = blowup(graph.base, b)
    relation = Relation(f"ex_out >= {b}^{k} * ex_in", 'ex', 'ex', op='ge',
                        scale=b ** k)
    return ReductionOutput('blowup', graph, produced, relation,
                           (graph.pattern,), tuple(family), None,
                           (graph.base.n, produced.n), {'b': b})
