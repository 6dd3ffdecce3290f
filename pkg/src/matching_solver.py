import logging
from dataclasses import dataclass
from itertools import combinations
from math import comb
from time import perf_counter
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np
import pandas as pd
from scipy.stats import linregress

from src.errors import PreconditionError
from src.helpers import from_mask, popcount, to_mask
from src.hypergraph import Edge, Hypergraph, complete_graph, link, \
    matching_graph
from src.oracles import RemProblem, SolveResult, SolveStats, solve_ex
from src.settings import DEFAULT_EDGE_BUDGET
from src.structure import matching_number, max_disjoint

logger = logging.getLogger(__name__)

Family = List['CandidatePair']


@dataclass(frozen=True, order=True)
class CandidatePair:
    """
    A pair (H, A): ``edges`` is a bitmask over the host graph's edge order,
    ``anchor`` a bitmask over its vertices.
    """
    edges: int
    anchor: int

    def edge_list(self, graph: Hypergraph) -> List[Edge]:
        return [graph.edges[e] for e in from_mask(self.edges)]

    def anchor_set(self) -> List[int]:
        return from_mask(self.anchor)

    def anchor_size(self) -> int:
        return popcount(self.anchor)


def heavy_threshold(k: int, r: int) -> int:
    """
    Matching size above which a set counts as heavy.

    Parameters
    ----------
    k: int
        Uniformity, at least 2.
    r: int
        Forbidden matching size, at least 1.

    Returns
    -------
    int
        ``(r - 1) * k``
    """
    if k < 2 or r < 1:
        raise PreconditionError(f"need k >= 2 and r >= 1, got k={k}, r={r}")
    return (r - 1) * k


def is_t_heavy(graph: Hypergraph, subset: Iterable[int], t: int) -> bool:
    return matching_number(link(graph, subset), limit=t + 1) > t


def is_t_light(graph: Hypergraph, subset: Iterable[int], t: int) -> bool:
    return not is_t_heavy(graph, subset, t)


def heavy_sets(graph: Hypergraph, size: int, t: int) -> List[Tuple[int, ...]]:
    """All t-heavy vertex sets of the given size."""
    return [s for s in combinations(range(graph.n), size)
            if is_t_heavy(graph, s, t)]


def heavy_closure(free: Hypergraph, host: Hypergraph,
                  subset: Iterable[int]) -> Hypergraph:
    """
    ``free`` plus every host edge containing ``subset``.

    Parameters
    ----------
    free: Hypergraph
        Spanning subgraph of ``host``.
    host: Hypergraph
    subset: Iterable[int]

    Returns
    -------
    Hypergraph
    """
    members = set(subset)
    extra = [e for e in host.edges
             if members.issubset(e) and e not in free]
    return free.with_edges(extra)


class MatchingSolver:
    """
    Candidate-family algorithm for the largest subgraph without r pairwise
    disjoint edges.

    Families are built level by level and cached; ``family(i)`` computes
    whatever levels are still missing.

    Parameters
    ----------
    graph: Hypergraph
    r: int
        Size of the forbidden matching.
    prune: bool
        Drop pairs whose H already contains r disjoint edges.
    compact: bool
        For each H keep only the inclusion-maximal anchors.
    """

    def __init__(self, graph: Hypergraph, r: int, prune: bool = False,
                 compact: bool = False):
        if r < 1:
            raise PreconditionError(f"r must be >= 1, got {r}")
        self.graph = graph
        self.r = r
        self.k = graph.k
        self.t = (r - 1) * graph.k
        self.prune = prune
        self.compact = compact

        self.vertex_masks = [to_mask(e) for e in graph.edges]
        self.families: List[Family] = []
        self.nodes = 0
        self._nu: Dict[int, int] = {}
        self._containing: Dict[Tuple[int, ...], int] = {}
        self._light: Dict[Tuple[int, ...], List[int]] = {}
        self._extension: Dict[Tuple[int, int], Optional[int]] = {}

    def nu(self, edges: int) -> int:
        """Matching number of an edge mask, capped at r."""
        if edges not in self._nu:
            masks = [self.vertex_masks[e] for e in from_mask(edges)]
            self._nu[edges] = max_disjoint(masks, self.k, self.graph.n,
                                           limit=self.r)
        return self._nu[edges]

    def is_free(self, edges: int) -> bool:
        return self.nu(edges) < self.r

    def containing(self, subset: Tuple[int, ...]) -> int:
        """Edge mask of the host edges containing ``subset``."""
        if subset not in self._containing:
            members = to_mask(subset)
            self._containing[subset] = to_mask(
                e for e, mask in enumerate(self.vertex_masks)
                if mask & members == members)
        return self._containing[subset]

    def light_options(self, subset: Tuple[int, ...]) -> List[int]:
        """
        Vertex sets of the matchings of size at most t in the link of
        ``subset``.

        The empty matching is always an option. For a k-set the link is
        0-uniform and the only vertex set is the empty one.

        Parameters
        ----------
        subset: Tuple[int, ...]

        Returns
        -------
        List[int]
            Sorted vertex masks; only the maximal ones in compact mode.
        """
        if subset in self._light:
            return self._light[subset]
        options: Set[int] = {0}
        if len(subset) < self.k:
            members = to_mask(subset)
            rests = [self.vertex_masks[e] & ~members
                     for e in from_mask(self.containing(subset))]

            def collect(start: int, covered: int, size: int) -> None:
                options.add(covered)
                if size == self.t:
                    return
                for i in range(start, len(rests)):
                    if not rests[i] & covered:
                        collect(i + 1, covered | rests[i], size + 1)

            collect(0, 0, 0)
        result = sorted(options)
        if self.compact:
            result = [a for a in result
                      if not any(a != b and a & b == a for b in result)]
        self._light[subset] = result
        return result

    def _reduce(self, states: Set[Tuple[int, int]]) -> Set[Tuple[int, int]]:
        if not self.compact:
            return states
        by_edges: Dict[int, List[int]] = {}
        for edges, anchor in states:
            by_edges.setdefault(edges, []).append(anchor)
        reduced = set()
        for edges, anchors in by_edges.items():
            kept: List[int] = []
            for anchor in sorted(set(anchors), key=popcount, reverse=True):
                if not any(anchor & other == anchor for other in kept):
                    kept.append(anchor)
            reduced.update((edges, anchor) for anchor in kept)
        return reduced

    def base_family(self) -> Family:
        """
        Pairs (M, V(M)) for every matching M of at most r - 1 edges.

        Returns
        -------
        List[CandidatePair]
        """
        pairs = set()

        def collect(start: int, chosen: int, covered: int,
                    size: int) -> None:
            pairs.add((chosen, covered))
            if size == self.r - 1:
                return
            for e in range(start, len(self.vertex_masks)):
                mask = self.vertex_masks[e]
                if not mask & covered:
                    collect(e + 1, chosen | 1 << e, covered | mask, size + 1)

        collect(0, 0, 0, 0)
        return [CandidatePair(h, a) for h, a in sorted(pairs)]

    def _extend_pair(self, pair: CandidatePair,
                     level: int) -> Set[Tuple[int, int]]:
        subsets = list(combinations(from_mask(pair.anchor), level))
        states = {(pair.edges, pair.anchor)}
        for subset in subsets:
            grown: Set[Tuple[int, int]] = set()
            heavy_edges = self.containing(subset)
            options = self.light_options(subset)
            for edges, anchor in states:
                heavy = edges | heavy_edges
                if not self.prune or self.is_free(heavy):
                    grown.add((heavy, anchor))
                for vertices in options:
                    grown.add((edges, anchor | vertices))
            states = self._reduce(grown)
            self.nodes += len(states)
        return states

    def extend(self, previous: Sequence[CandidatePair],
               level: int) -> Family:
        """
        One inductive step of the candidate-family construction.

        For a pair (H, A) every split of the level-sized subsets of A into
        heavy and light ones is taken: the heavy ones add all host edges
        containing them to H, each light one adds the vertices of a chosen
        matching of at most t edges of its link to A. The splits are
        explored subset by subset, merging equal intermediate pairs.

        Parameters
        ----------
        previous: Sequence[CandidatePair]
            Family of the previous level.
        level: int
            1..k

        Returns
        -------
        List[CandidatePair]
        """
        if not 1 <= level <= self.k:
            raise PreconditionError(
                f"level {level} outside 1..{self.k}")
        states: Set[Tuple[int, int]] = set()
        for pair in previous:
            if self.prune and not self.is_free(pair.edges):
                continue
            states |= self._extend_pair(pair, level)
        states = self._reduce(states)
        family = [CandidatePair(h, a) for h, a in sorted(states)]
        logger.debug("level %d: %d pairs", level, len(family))
        return family

    def family(self, level: int) -> Family:
        if not 0 <= level <= self.k:
            raise PreconditionError(f"level {level} outside 0..{self.k}")
        if not self.families:
            self.families.append(self.base_family())
        while len(self.families) <= level:
            current = len(self.families)
            self.families.append(self.extend(self.families[-1], current))
        return self.families[level]

    def best_extension(self, edges: int, anchor: int) -> Optional[int]:
        """
        Largest free superset of ``edges`` inside ``edges`` plus the host
        edges lying in the anchor.

        Parameters
        ----------
        edges: int
        anchor: int

        Returns
        -------
        int, optional
            Edge mask, None when ``edges`` itself is not free.
        """
        if not self.is_free(edges):
            return None
        inside = to_mask(e for e, mask in enumerate(self.vertex_masks)
                         if mask & anchor == mask)
        key = (edges, inside & ~edges)
        if key in self._extension:
            return self._extension[key]
        best = {'mask': edges, 'size': popcount(edges)}

        def grow(current: int, size: int, candidates: List[int]) -> None:
            self.nodes += 1
            if size > best['size']:
                best['mask'], best['size'] = current, size
            if size + len(candidates) <= best['size'] or not candidates:
                return
            first, rest = candidates[0], candidates[1:]
            taken = current | 1 << first
            if self.is_free(taken):
                grow(taken, size + 1,
                     [c for c in rest if self.is_free(taken | 1 << c)])
            grow(current, size, rest)

        grow(edges, popcount(edges),
             [c for c in from_mask(key[1]) if self.is_free(edges | 1 << c)])
        self._extension[key] = best['mask']
        return best['mask']

    def solve(self, materialize: bool = False) -> SolveResult:
        """
        Maximum number of edges of a subgraph with matching number < r.

        Parameters
        ----------
        materialize: bool
            Build the last family explicitly instead of maximizing over
            the extensions of the previous one.

        Returns
        -------
        SolveResult
        """
        start = perf_counter()
        best = 0
        if materialize:
            for pair in self.family(self.k):
                if self.is_free(pair.edges) and \
                        popcount(pair.edges) > popcount(best):
                    best = pair.edges
        else:
            for pair in self.family(self.k - 1):
                found = self.best_extension(pair.edges, pair.anchor)
                if found is not None and popcount(found) > popcount(best):
                    best = found
        stats = SolveStats(nodes=self.nodes, elapsed=perf_counter() - start)
        stats.extra['family_sizes'] = [len(f) for f in self.families]
        stats.extra['max_anchor'] = max(
            (p.anchor_size() for f in self.families for p in f), default=0)
        witness = tuple(self.graph.edges[e] for e in from_mask(best))
        logger.debug("matching solver: ex=%d, families %s", len(witness),
                     stats.extra['family_sizes'])
        return SolveResult('ex', len(witness), witness, stats)


def generate_base_family(graph: Hypergraph, r: int) -> Family:
    return MatchingSolver(graph, r).base_family()


def extend_family(graph: Hypergraph, r: int, level: int,
                  previous: Sequence[CandidatePair], prune: bool = False,
                  compact: bool = False) -> Family:
    return MatchingSolver(graph, r, prune, compact).extend(previous, level)


def build_families(graph: Hypergraph, r: int, prune: bool = False,
                   compact: bool = False) -> List[Family]:
    solver = MatchingSolver(graph, r, prune, compact)
    solver.family(graph.k)
    return solver.families


def solve_matching_ex(graph: Hypergraph, r: int, prune: bool = False,
                      materialize: bool = False) -> SolveResult:
    """
    ex of the r-edge matching, via the candidate families.

    Parameters
    ----------
    graph: Hypergraph
    r: int
    prune: bool
        Drop pairs that already contain r disjoint edges while building
        the literal families. The compacted path always drops them, since
        H only grows along a chain of pairs.
    materialize: bool
        Build every family literally, without anchor compaction, and
        maximize over the last one.

    Returns
    -------
    SolveResult
    """
    solver = MatchingSolver(graph, r, prune=prune or not materialize,
                            compact=not materialize)
    return solver.solve(materialize=materialize)


def level_guarantee_holds(graph: Hypergraph, family: Sequence[CandidatePair],
                          level: int, free_edges: Iterable[Edge]) -> bool:
    """
    Does some pair agree with ``free_edges`` on every edge meeting its
    anchor in at most ``level`` vertices?

    Parameters
    ----------
    graph: Hypergraph
    family: Sequence[CandidatePair]
    level: int
    free_edges: Iterable[Edge]

    Returns
    -------
    bool
    """
    index = graph.edge_index()
    target = to_mask(index[e] for e in free_edges)
    vertex_masks = [to_mask(e) for e in graph.edges]
    for pair in family:
        relevant = to_mask(e for e, mask in enumerate(vertex_masks)
                           if popcount(mask & pair.anchor) <= level)
        if (pair.edges ^ target) & relevant == 0:
            return True
    return False


def family_degree_bound(k: int, r: int, level: int) -> int:
    """
    Exponent d with ``|H_level| = O(n^d)`` for the candidate families.

    Level 0 holds the matchings of at most r - 1 edges, with anchors of
    ``a = k (r - 1)`` vertices. At level i each of the ``C(a, i)`` subsets
    of an anchor picks a matching of at most t edges in its
    ``(k - i)``-uniform link, so both the exponent and the anchor size grow
    by ``C(a, i) t (k - i)``.

    Parameters
    ----------
    k: int
    r: int
    level: int
        0..k

    Returns
    -------
    int
    """
    if not 0 <= level <= k:
        raise PreconditionError(f"level {level} outside 0..{k}")
    t = heavy_threshold(k, r)
    anchor = k * (r - 1)
    for i in range(1, level + 1):
        anchor += comb(anchor, i) * t * (k - i)
    return anchor


def growth_profile(ns: Sequence[int], r: int = 2, k: int = 3,
                   prune: bool = True, oracle_budget: Optional[int] = None,
                   materialize: bool = False
                   ) -> Tuple[pd.DataFrame, float]:
    """
    Family sizes and runtimes of the candidate-family solver on complete
    k-graphs, with the brute-force oracle timed where it fits its budget.

    Parameters
    ----------
    ns: Sequence[int]
        Vertex counts.
    r: int
    k: int
    prune: bool
    oracle_budget: int, optional
        Edge budget for the brute-force comparison,
        ``DEFAULT_EDGE_BUDGET`` by default.
    materialize: bool
        Also build the level-k family.

    Returns
    -------
    Tuple[pd.DataFrame, float]
        One row per n with a ``level_i`` column holding ``|H_i|`` for every
        level built, and the log-log slope of the last level against n.
    """
    if oracle_budget is None:
        oracle_budget = DEFAULT_EDGE_BUDGET
    rows = []
    for n in ns:
        graph = complete_graph(n, k)
        solver = MatchingSolver(graph, r, prune=prune, compact=True)
        start = perf_counter()
        result = solver.solve(materialize=materialize)
        elapsed = perf_counter() - start
        row: Dict[str, float] = {'n': n, 'edges': len(graph),
                                 'ex': result.value}
        for level, size in enumerate(result.stats.extra['family_sizes']):
            row[f"level_{level}"] = size
        row.update({'max_anchor': result.stats.extra['max_anchor'],
                    'runtime': elapsed, 'oracle_runtime': np.nan})
        if len(graph) <= oracle_budget:
            start = perf_counter()
            solve_ex(RemProblem(graph, (matching_graph(r, k),)),
                     budget=oracle_budget)
            row['oracle_runtime'] = perf_counter() - start
        rows.append(row)
    table = pd.DataFrame(rows)
    slope = float('nan')
    if len(table) >= 2:
        last = [c for c in table.columns if c.startswith('level_')][-1]
        fit = linregress(np.log(table['n']), np.log(table[last]))
        slope = float(fit.slope)
        logger.debug("growth of %s: slope %.3f", last, slope)
    return table, slope
