from itertools import combinations, product
from typing import List, Set

import numpy as np

from src.cnf import Clause, CnfFormula
from src.errors import PreconditionError
from src.hypergraph import Hypergraph
from src.partition import PartitionedHypergraph

MAX_ATTEMPTS = 1000


def random_hypergraph(rng: np.random.Generator, n: int, k: int,
                      density: float) -> Hypergraph:
    """
    Uniform random k-graph: every k-subset is an edge with probability
    ``density``.

    Parameters
    ----------
    rng: np.random.Generator
    n: int
    k: int
    density: float

    Returns
    -------
    Hypergraph
    """
    candidates = list(combinations(range(n), k))
    keep = rng.random(len(candidates)) < density
    return Hypergraph(k, n, [e for e, kept in zip(candidates, keep) if kept])


def random_partite(rng: np.random.Generator, pattern: Hypergraph,
                   max_part_size: int, density: float
                   ) -> PartitionedHypergraph:
    """
    Random pattern-partite instance.

    Part sizes are uniform on ``1..max_part_size``; parts get consecutive
    ids in pattern-vertex order and only transversal edges spanning a
    pattern edge are sampled.

    Parameters
    ----------
    rng: np.random.Generator
    pattern: Hypergraph
    max_part_size: int
    density: float

    Returns
    -------
    PartitionedHypergraph
    """
    if max_part_size < 1:
        raise PreconditionError(f"part size must be >= 1: {max_part_size}")
    sizes = rng.integers(1, max_part_size + 1, size=pattern.n)
    parts: List[int] = []
    members: List[List[int]] = []
    for role, size in enumerate(sizes):
        members.append(list(range(len(parts), len(parts) + int(size))))
        parts.extend([role] * int(size))
    candidates = [edge for f_edge in pattern.edges
                  for edge in product(*(members[i] for i in f_edge))]
    keep = rng.random(len(candidates)) < density
    base = Hypergraph(pattern.k, len(parts),
                      [e for e, kept in zip(candidates, keep) if kept])
    return PartitionedHypergraph(base, pattern, tuple(parts))


def _random_clause(rng: np.random.Generator, variables: List[int],
                   width: int) -> Clause:
    chosen = rng.choice(variables, size=width, replace=False)
    signs = rng.integers(0, 2, size=width) * 2 - 1
    return tuple(int(v) * int(s) for v, s in zip(chosen, signs))


def random_3cnf(rng: np.random.Generator, n: int, m: int) -> CnfFormula:
    """
    Random 3-CNF on ``n >= 3`` variables with ``m`` distinct clauses.

    Parameters
    ----------
    rng: np.random.Generator
    n: int
    m: int

    Returns
    -------
    CnfFormula
    """
    if n < 3:
        raise PreconditionError(f"3-CNF needs at least 3 variables: {n}")
    clauses: List[Clause] = []
    seen: Set[frozenset] = set()
    for _ in range(MAX_ATTEMPTS):
        if len(clauses) == m:
            break
        clause = _random_clause(rng, list(range(1, n + 1)), 3)
        if frozenset(clause) not in seen:
            seen.add(frozenset(clause))
            clauses.append(clause)
    if len(clauses) != m:
        raise PreconditionError(f"could not draw {m} distinct clauses")
    return CnfFormula(n, tuple(clauses))


def random_3occ_2cnf(rng: np.random.Generator, n: int,
                     m: int) -> CnfFormula:
    """
    Random 2-CNF with ``m`` distinct clauses and at most three
    occurrences per variable.

    Parameters
    ----------
    rng: np.random.Generator
    n: int
    m: int
        At most ``3 * n // 2``.

    Returns
    -------
    CnfFormula
    """
    if 2 * m > 3 * n:
        raise PreconditionError(
            f"{m} clauses need more than three occurrences of some of "
            f"{n} variables")
    for _ in range(MAX_ATTEMPTS):
        budget = {v: 3 for v in range(1, n + 1)}
        clauses: List[Clause] = []
        seen: Set[frozenset] = set()
        for _ in range(MAX_ATTEMPTS):
            if len(clauses) == m:
                break
            open_variables = [v for v, left in budget.items() if left]
            if len(open_variables) < 2:
                break
            clause = _random_clause(rng, open_variables, 2)
            if frozenset(clause) in seen:
                continue
            seen.add(frozenset(clause))
            clauses.append(clause)
            for literal in clause:
                budget[abs(literal)] -= 1
        if len(clauses) == m:
            return CnfFormula(n, tuple(clauses))
    raise PreconditionError(f"could not draw {m} clauses on {n} variables")
