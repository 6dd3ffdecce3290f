import logging
from collections import Counter
from itertools import combinations
from typing import Dict, List, Sequence, Tuple

from src.cnf import Assignment, CnfFormula, preprocess_2cnf
from src.copies import enumerate_copies
from src.errors import PreconditionError
from src.gadgets import build_gadget
from src.hypergraph import (Edge, Hypergraph, cycle_graph,
                            intersecting_pair, make_edge)
from src.partition import PartitionedHypergraph
from src.reductions import ReductionOutput, Relation

logger = logging.getLogger(__name__)

INTERSECT_TWO = 'intersect-2'
INTERSECT_ONE = 'intersect-1'


def _reject_duplicates(formula: CnfFormula) -> None:
    seen = Counter(frozenset(clause) for clause in formula.clauses)
    repeated = [sorted(c) for c, count in seen.items() if count > 1]
    if repeated:
        raise PreconditionError(f"duplicate clauses {repeated}")


def variable_triangle(variable: int) -> Tuple[int, int, int]:
    """Vertices of the triangle of ``variable`` (1-based), by colour."""
    base = 3 * (variable - 1)
    return base, base + 1, base + 2


def clause_roles(clause: Sequence[int]) -> Tuple[int, Tuple[int, ...]]:
    """
    Gadget type and the literals in the roles of the marked triangles.

    A clause whose literals share a sign uses gadget 1 with its literals
    in variable order; otherwise gadget 2 gets the two literals of equal
    sign first and the odd one last.
    """
    ordered = sorted(clause, key=abs)
    signs = [lit > 0 for lit in ordered]
    if len(set(signs)) == 1:
        return 1, tuple(ordered)
    odd = [lit for lit in ordered if signs.count(lit > 0) == 1][0]
    rest = tuple(lit for lit in ordered if lit != odd)
    return 2, rest + (odd,)


def sat_to_triangle(formula: CnfFormula) -> ReductionOutput:
    """
    Encode a 3-CNF formula as a 3-partite triangle-deletion instance.

    Variable ``x`` gets a triangle coloured 1, 2, 3; deleting its
    ``{1, 2}`` edge means true and its ``{1, 3}`` edge false. Each clause
    attaches a gadget whose marked triangles are the triangles of its
    variables, with colours 2 and 3 exchanged when the first role holds a
    negated literal. With ``m0`` single-sign clauses the minimum deletion
    count is ``n + 4 m0 + 3 (m - m0) = n + 3m + m0`` exactly when the
    formula is satisfiable, and never smaller.

    Parameters
    ----------
    formula: CnfFormula
        Every clause has three distinct variables; no clause repeats.

    Returns
    -------
    ReductionOutput
    """
    if formula.m and formula.width() != 3:
        raise PreconditionError("every clause needs exactly 3 literals")
    _reject_duplicates(formula)
    edges = set()
    parts: List[int] = []
    for variable in range(1, formula.n + 1):
        triangle = variable_triangle(variable)
        edges.update(combinations(triangle, 2))
        parts.extend((0, 1, 2))
    single_sign = 0
    threshold = formula.n
    expected_edges, expected_triangles = 3 * formula.n, formula.n
    next_vertex = 3 * formula.n
    for clause in formula.clauses:
        kind, roles = clause_roles(clause)
        single_sign += kind == 1
        gadget = build_gadget(kind)
        threshold += gadget.bound
        expected_edges += len(gadget.internal_edges())
        expected_triangles += len(gadget.all_triangles()) - 3
        swap = {1: 1, 2: 3, 3: 2} if roles[0] < 0 else {1: 1, 2: 2, 3: 3}
        image: Dict[int, int] = {}
        for j, literal in enumerate(roles):
            triangle = variable_triangle(abs(literal))
            for g in gadget.triangles[j]:
                image[g] = triangle[swap[gadget.colouring[g]] - 1]
        for g in range(gadget.graph.n):
            if g not in image:
                image[g] = next_vertex
                parts.append(swap[gadget.colouring[g]] - 1)
                next_vertex += 1
        edges.update(make_edge(image[v] for v in e)
                     for e in gadget.graph.edges)
    graph = Hypergraph(2, next_vertex, edges)
    triangles = len(enumerate_copies(graph, cycle_graph(3)))
    if (len(graph), triangles) != (expected_edges, expected_triangles):
        raise AssertionError(
            f"clause gadgets interfere: {len(graph)} edges and {triangles} "
            f"triangles, expected {expected_edges} and {expected_triangles}")
    produced = PartitionedHypergraph(graph, cycle_graph(3), tuple(parts))
    relation = Relation("rem_out = n + 3m + m0 iff satisfiable", 'sat',
                        'rem-partite', op='iff', offset=threshold)
    logger.debug("3-SAT encoding: %d vertices, %d edges, threshold %d",
                 next_vertex, len(edges), threshold)
    return ReductionOutput('sat3', formula, produced, relation, (),
                           (cycle_graph(3),), None,
                           (3 * formula.n, next_vertex),
                           {'n': formula.n, 'm': formula.m,
                            'm0': single_sign, 'threshold': threshold})


def assignment_from_deletion(formula: CnfFormula,
                             deleted: Sequence[Edge]) -> Assignment:
    """
    Read a truth assignment off a deletion set of :func:`sat_to_triangle`.

    A variable is true when the ``{1, 2}`` edge of its triangle is
    deleted, false when only the ``{1, 3}`` edge is, and true otherwise.
    """
    removed = {make_edge(e) for e in deleted}
    values = []
    for variable in range(1, formula.n + 1):
        one, two, three = variable_triangle(variable)
        values.append((one, two) in removed or (one, three) not in removed)
    return tuple(values)


def _literal_vertices(formula: CnfFormula, variant: str
                      ) -> Tuple[Dict[int, Edge], Dict[int, List[int]], int]:
    """
    Literal edges and, per literal, the vertex each occurrence attaches to.

    With ``intersect-2`` variable ``x`` owns shared vertices ``p, q`` and
    private vertices ``r`` (for ``x``) and ``s`` (for ``not x``); the
    j-th occurrence of a literal uses the j-th vertex of its shared
    labelling. ``not x`` is labelled ``(q, p)`` when ``(p, q)`` would let
    an occurrence of ``x`` and one of ``not x`` with the same partner use
    the same shared vertex.

    With ``intersect-1`` variable ``x`` owns ``c`` and private vertices
    ``r1, r2, s1, s2``; the j-th occurrence uses the j-th private vertex.
    """
    literal_edges: Dict[int, Edge] = {}
    attach: Dict[int, List[int]] = {}
    partners: Dict[int, List[int]] = {}
    for clause in formula.clauses:
        a, b = clause
        partners.setdefault(a, []).append(b)
        partners.setdefault(b, []).append(a)
    next_vertex = 0
    for x in range(1, formula.n + 1):
        if variant == INTERSECT_TWO:
            p, q, r, s = range(next_vertex, next_vertex + 4)
            next_vertex += 4
            literal_edges[x] = make_edge((p, q, r))
            literal_edges[-x] = make_edge((p, q, s))
            attach[x] = [p, q]
            for labelling in ([p, q], [q, p]):
                if not any(attach[x][i] == labelling[j]
                           and partners.get(x, [])[i]
                           == partners.get(-x, [])[j]
                           for i in range(len(partners.get(x, [])))
                           for j in range(len(partners.get(-x, [])))):
                    attach[-x] = labelling
                    break
            else:
                raise PreconditionError(
                    f"no conflict-free labelling for variable {x}")
        else:
            c, r1, r2, s1, s2 = range(next_vertex, next_vertex + 5)
            next_vertex += 5
            literal_edges[x] = make_edge((c, r1, r2))
            literal_edges[-x] = make_edge((c, s1, s2))
            attach[x] = [r1, r2]
            attach[-x] = [s1, s2]
    return literal_edges, attach, next_vertex


def max2sat_to_e23(formula: CnfFormula,
                   variant: str = INTERSECT_TWO) -> ReductionOutput:
    """
    Encode a 3-occurrence MAX-2-SAT formula as an intersecting-pair
    extremal problem.

    The formula is first preprocessed so that every variable occurs with
    both signs. Each variable contributes two literal edges; each clause
    ``(a or b)`` contributes two edges ``f_a, f_b`` chaining
    ``e_a, f_a, f_b, e_b``. With ``intersect-2`` consecutive chain edges
    share two vertices and the pattern is E_2^(3); with ``intersect-1``
    they share one vertex through three fresh clause vertices and the
    pattern is E_1^(3). In both cases ``ex = n + maxsat``.

    Parameters
    ----------
    formula: CnfFormula
        2-CNF, at most three occurrences per variable.
    variant: str
        ``'intersect-2'`` or ``'intersect-1'``.

    Returns
    -------
    ReductionOutput
        ``source`` is the preprocessed formula.
    """
    if variant not in (INTERSECT_TWO, INTERSECT_ONE):
        raise PreconditionError(f"unknown variant {variant!r}")
    if formula.m and formula.width() != 2:
        raise PreconditionError("every clause needs exactly 2 literals")
    reduced = preprocess_2cnf(formula)
    phi = reduced.formula
    _reject_duplicates(phi)
    for variable in range(1, phi.n + 1):
        for literal in (variable, -variable):
            count = len(phi.occurrences(literal))
            if count > 2:
                raise PreconditionError(
                    f"literal {literal} of the preprocessed formula occurs "
                    f"{count} > 2 times")
    literal_edges, attach, next_vertex = _literal_vertices(phi, variant)
    private = {lit: [v for v in literal_edges[lit]
                     if v not in literal_edges[-lit]]
               for lit in literal_edges}
    seen: Counter = Counter()
    chains: List[Tuple[Edge, Edge, Edge, Edge]] = []
    for clause in phi.clauses:
        a, b = clause
        slot = {a: seen[a], b: seen[b]}
        seen[a] += 1
        seen[b] += 1
        if variant == INTERSECT_TWO:
            f_a = make_edge((attach[a][slot[a]], private[a][0],
                             private[b][0]))
            f_b = make_edge((attach[b][slot[b]], private[b][0],
                             private[a][0]))
        else:
            z1, z2, z3 = range(next_vertex, next_vertex + 3)
            next_vertex += 3
            f_a = make_edge((z1, z2, attach[a][slot[a]]))
            f_b = make_edge((z2, z3, attach[b][slot[b]]))
        chains.append((literal_edges[a], f_a, f_b, literal_edges[b]))
    edges = list(literal_edges.values())
    edges.extend(e for chain in chains for e in chain[1:3])
    produced = Hypergraph(3, next_vertex, edges)
    if len(produced) != 2 * phi.n + 2 * phi.m:
        raise AssertionError(
            f"expected {2 * phi.n + 2 * phi.m} edges, got {len(produced)}")
    t = 2 if variant == INTERSECT_TWO else 1
    relation = Relation("ex_out = n + maxsat_in", 'maxsat', 'ex',
                        offset=phi.n)
    output = ReductionOutput(
        'max2sat', phi, produced, relation, (), (intersecting_pair(t, 3),),
        None, (0, next_vertex),
        {'variant': variant, 'n': phi.n, 'm': phi.m,
         'removed': reduced.removed, 'preprocessed': reduced,
         'literal_edges': literal_edges, 'chains': tuple(chains)})
    inventory = set(e23_intersection_inventory(output))
    expected = set(_expected_pairs(literal_edges, chains, phi.n))
    if inventory != expected:
        raise AssertionError(
            f"unexpected intersecting pairs {sorted(inventory - expected)}")
    return output


def _expected_pairs(literal_edges: Dict[int, Edge],
                    chains: Sequence[Tuple[Edge, Edge, Edge, Edge]],
                    n: int) -> List[Tuple[Edge, Edge]]:
    pairs = [tuple(sorted((literal_edges[x], literal_edges[-x])))
             for x in range(1, n + 1)]
    for chain in chains:
        pairs.extend(tuple(sorted(pair)) for pair in zip(chain, chain[1:]))
    return pairs  # type: ignore


def e23_intersection_inventory(output: ReductionOutput
                               ) -> List[Tuple[Edge, Edge]]:
    """
    Edge pairs of a MAX-2-SAT encoding meeting in exactly ``t`` vertices,
    where ``t`` is 2 or 1 by variant.

    Parameters
    ----------
    output: ReductionOutput
        Result of :func:`max2sat_to_e23`.

    Returns
    -------
    List[Tuple[Edge, Edge]]
    """
    t = 2 if output.parameters['variant'] == INTERSECT_TWO else 1
    graph = output.graph
    return [(e, f) for e, f in combinations(graph.edges, 2)
            if len(set(e) & set(f)) == t]


def assignment_from_retained(output: ReductionOutput,
                             retained: Sequence[Edge]) -> Assignment:
    """
    Truth assignment of the preprocessed formula read off a pattern-free
    subgraph of a MAX-2-SAT encoding.

    ``x`` is true when ``e_x`` was deleted. When both literal edges were
    deleted, the literal occurring less often is made false.
    """
    phi: CnfFormula = output.source  # type: ignore
    literal_edges: Dict[int, Edge] = output.parameters['literal_edges']
    kept = {make_edge(e) for e in retained}
    values = []
    for x in range(1, phi.n + 1):
        pos, neg = literal_edges[x] in kept, literal_edges[-x] in kept
        if pos != neg:
            values.append(neg)
        else:
            values.append(len(phi.occurrences(x))
                          >= len(phi.occurrences(-x)))
    return tuple(values)
