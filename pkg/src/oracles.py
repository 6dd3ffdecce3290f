import logging
from dataclasses import dataclass, field
from itertools import combinations
from time import perf_counter
from typing import List, Optional, Sequence, Tuple, Union

from src.copies import enumerate_copies
from src.errors import BudgetExceededError, PreconditionError
from src.helpers import from_mask, popcount, to_mask
from src.hypergraph import Edge, Hypergraph
from src.partition import PartitionedHypergraph
from src.settings import DEFAULT_EDGE_BUDGET

logger = logging.getLogger(__name__)

Instance = Union[Hypergraph, PartitionedHypergraph]
MAX_EXHAUSTIVE_EDGES = 16
SUPERSET_SCAN_LIMIT = 5000


@dataclass(frozen=True)
class RemProblem:
    """
    Edge-deletion problem: destroy every copy of every pattern.

    With ``canonical_only`` the instance must be partitioned and only
    canonical copies of its pattern count.
    """
    instance: Instance
    patterns: Tuple[Hypergraph, ...] = ()
    canonical_only: bool = False

    def __post_init__(self):
        object.__setattr__(self, 'patterns', tuple(self.patterns))
        if self.canonical_only:
            if not isinstance(self.instance, PartitionedHypergraph):
                raise PreconditionError(
                    "canonical copies need a partitioned instance")
            if not self.patterns:
                object.__setattr__(self, 'patterns',
                                   (self.instance.pattern,))
            if len(self.patterns) != 1:
                raise PreconditionError(
                    "partite problems take exactly one pattern")
        elif not self.patterns:
            raise PreconditionError("no pattern given")
        for pattern in self.patterns:
            if pattern.k != self.graph.k:
                raise PreconditionError(
                    f"pattern is {pattern.k}-uniform, instance is "
                    f"{self.graph.k}-uniform")

    @property
    def graph(self) -> Hypergraph:
        if isinstance(self.instance, PartitionedHypergraph):
            return self.instance.base
        return self.instance

    def copy_masks(self) -> List[int]:
        """Every copy as a bitmask over the instance's edge order."""
        graph = self.graph
        index = graph.edge_index()
        partition = (self.instance if self.canonical_only else None)
        masks = set()
        for pattern in self.patterns:
            for copy in enumerate_copies(graph, pattern, self.canonical_only,
                                         partition):
                masks.add(to_mask(index[e] for e in copy.edges))
        return sorted(masks)


@dataclass
class SolveStats:
    nodes: int = 0
    copies: int = 0
    elapsed: float = 0.
    extra: dict = field(default_factory=dict)


@dataclass(frozen=True)
class SolveResult:
    """
    Optimal value with its witness.

    For ``kind == 'rem'`` the witness is the deletion set, for
    ``kind == 'ex'`` it is the retained pattern-free subgraph.
    """
    kind: str
    value: int
    witness: Tuple[Edge, ...]
    stats: SolveStats

    def __post_init__(self):
        if len(self.witness) != self.value:
            raise AssertionError(
                f"witness has {len(self.witness)} edges, value {self.value}")


def _drop_supersets(masks: Sequence[int]) -> List[int]:
    if len(masks) > SUPERSET_SCAN_LIMIT:
        return sorted(set(masks))
    kept: List[int] = []
    for mask in sorted(set(masks), key=lambda m: (popcount(m), m)):
        if not any(small & mask == small for small in kept):
            kept.append(mask)
    return kept


def _greedy_cover(copies: Sequence[int], total: int) -> int:
    deleted = 0
    open_copies = list(copies)
    while open_copies:
        counts = [0] * total
        for copy in open_copies:
            for e in from_mask(copy):
                counts[e] += 1
        best = max(range(total), key=lambda e: (counts[e], -e))
        deleted |= 1 << best
        open_copies = [c for c in open_copies if not c >> best & 1]
    return deleted


def _disjoint_lower_bound(available: Sequence[int]) -> int:
    used = 0
    count = 0
    for mask in sorted(available, key=popcount):
        if not mask & used:
            used |= mask
            count += 1
    return count


def minimum_hitting_set(copies: Sequence[int], total: int,
                        stats: Optional[SolveStats] = None) -> int:
    """
    Exact minimum set of edges meeting every copy.

    Branches on the open copy with the fewest allowed edges; in the branch
    deleting its j-th allowed edge the earlier ones are forbidden. The
    lower bound is a greedy family of copies with pairwise disjoint allowed
    edges.

    Parameters
    ----------
    copies: Sequence[int]
        Copies as edge bitmasks.
    total: int
        Number of edges.
    stats: SolveStats, optional
        Receives the node count.

    Returns
    -------
    int
        Bitmask of the deleted edges.
    """
    copies = _drop_supersets(copies)
    if not copies:
        return 0
    if any(copy == 0 for copy in copies):
        raise AssertionError("a copy without edges cannot be destroyed")
    best = {'mask': _greedy_cover(copies, total)}
    best['size'] = popcount(best['mask'])
    nodes = 0

    def branch(deleted: int, forbidden: int, size: int,
               open_copies: List[int]) -> None:
        nonlocal nodes
        nodes += 1
        if not open_copies:
            if size < best['size']:
                best['mask'], best['size'] = deleted, size
            return
        available = [copy & ~forbidden for copy in open_copies]
        if any(a == 0 for a in available):
            return
        if size + _disjoint_lower_bound(available) >= best['size']:
            return
        pivot = min(range(len(available)),
                    key=lambda i: (popcount(available[i]), i))
        blocked = forbidden
        for e in from_mask(available[pivot]):
            bit = 1 << e
            remaining = [c for c in open_copies if not c & bit]
            branch(deleted | bit, blocked, size + 1, remaining)
            blocked |= bit

    branch(0, 0, 0, list(copies))
    if stats is not None:
        stats.nodes += nodes
    return best['mask']


def _check_budget(graph: Hypergraph, budget: Optional[int]) -> None:
    if budget is None:
        budget = DEFAULT_EDGE_BUDGET
    if len(graph) > budget:
        raise BudgetExceededError(len(graph), budget)


def solve_rem(problem: RemProblem,
              budget: Optional[int] = None) -> SolveResult:
    """
    Exact minimum deletion set for a (partite) edge-deletion problem.

    Parameters
    ----------
    problem: RemProblem
    budget: int, optional
        Edge-count limit, ``DEFAULT_EDGE_BUDGET`` by default. Callers
        holding a :class:`Settings` pass its ``edge_budget``.

    Returns
    -------
    SolveResult
    """
    graph = problem.graph
    _check_budget(graph, budget)
    start = perf_counter()
    stats = SolveStats()
    copies = problem.copy_masks()
    stats.copies = len(copies)
    deleted = minimum_hitting_set(copies, len(graph), stats)
    for copy in copies:
        if not copy & deleted:
            raise AssertionError("deletion set misses a copy")
    stats.elapsed = perf_counter() - start
    witness = tuple(graph.edges[e] for e in from_mask(deleted))
    logger.debug("rem=%d over %d copies, %d nodes, %.3fs", len(witness),
                 stats.copies, stats.nodes, stats.elapsed)
    return SolveResult('rem', len(witness), witness, stats)


def solve_ex(problem: RemProblem,
             budget: Optional[int] = None) -> SolveResult:
    """
    Largest pattern-free subgraph, via ``ex = e(G) - rem``.

    Parameters
    ----------
    problem: RemProblem
    budget: int, optional

    Returns
    -------
    SolveResult
    """
    graph = problem.graph
    removal = solve_rem(problem, budget)
    deleted = set(removal.witness)
    kept = tuple(e for e in graph.edges if e not in deleted)
    if len(kept) + removal.value != len(graph):
        raise AssertionError("e(G) != ex + rem")
    return SolveResult('ex', len(kept), kept, removal.stats)


def count_copies(graph: Hypergraph, pattern: Hypergraph) -> int:
    if pattern.k != graph.k:
        return 0
    return len(enumerate_copies(graph, pattern))


def is_minimum_deletion(problem: RemProblem, result: SolveResult) -> bool:
    """
    Exhaustive check that no smaller deletion set exists.

    Only meaningful for small values; raises for values above 4.

    Parameters
    ----------
    problem: RemProblem
    result: SolveResult
        A ``rem`` result for ``problem``.

    Returns
    -------
    bool
    """
    if result.value > 4:
        raise PreconditionError("minimality spot-check supports rem <= 4")
    copies = problem.copy_masks()
    total = len(problem.graph)
    if result.value == 0:
        return not copies
    for smaller in combinations(range(total), result.value - 1):
        mask = to_mask(smaller)
        if all(copy & mask for copy in copies):
            return False
    return True


def enumerate_maximal_free(problem: RemProblem) -> List[Tuple[Edge, ...]]:
    """
    Every inclusion-maximal pattern-free subgraph, by exhaustion.

    Parameters
    ----------
    problem: RemProblem
        Instance with at most 16 edges.

    Returns
    -------
    List[Tuple[Edge, ...]]
    """
    graph = problem.graph
    total = len(graph)
    if total > MAX_EXHAUSTIVE_EDGES:
        raise PreconditionError(
            f"exhaustive enumeration supports at most "
            f"{MAX_EXHAUSTIVE_EDGES} edges, got {total}")
    copies = problem.copy_masks()

    def free(mask: int) -> bool:
        return all(copy & ~mask for copy in copies)

    maximal = []
    for mask in range(1 << total):
        if not free(mask):
            continue
        if all(mask >> e & 1 or not free(mask | 1 << e)
               for e in range(total)):
            maximal.append(tuple(graph.edges[e] for e in from_mask(mask)))
    return maximal
