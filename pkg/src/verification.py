import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from time import perf_counter
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from src.cnf import (CnfFormula, format_dimacs, is_satisfiable, max_sat,
                     satisfied_count)
from src.errors import BudgetExceededError, PreconditionError, \
    VerificationFailure
from src.generators import (random_3cnf, random_3occ_2cnf, random_hypergraph,
                            random_partite)
from src.hypergraph import (Hypergraph, complete_graph, cycle_graph,
                            matching_graph)
from src.hypergraph_io import format_hypergraph, format_partition
from src.matching_solver import solve_matching_ex
from src.oracles import RemProblem, SolveResult, solve_ex, solve_rem
from src.partition import PartitionedHypergraph
from src.reductions import (ReductionOutput, Source, blowup_reduction,
                            cycle_reduction, lift_reduction,
                            simplex_reduction)
from src.sat_reductions import (INTERSECT_ONE, INTERSECT_TWO,
                                assignment_from_deletion, max2sat_to_e23,
                                sat_to_triangle)
from src.structure_finder import structure_finder
from src.uniformity import (extend_witness, sunflower_step,
                            uplift_intersection, uplift_uniformity)

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
MAX_DRAWS = 20
PASS, FAIL, SKIPPED = 'pass', 'fail', 'skipped'

LIFT_PATTERNS = (
    Hypergraph(3, 4, [(0, 1, 3), (0, 2, 3), (1, 2, 3)]),
    complete_graph(4, 3),
    Hypergraph(2, 4, [(0, 1), (0, 2), (1, 2), (2, 3)]),
    cycle_graph(5),
)
BLOWUP_FAMILIES = (
    (cycle_graph(3),),
    (cycle_graph(3), complete_graph(4, 2)),
)


@dataclass
class VerificationConfig:
    """
    One verification campaign.

    ``params`` pins reduction parameters (``k``, ``length``, ``b``, ``t``,
    ``r``, ``variant``, ``N``); anything not pinned is drawn per trial.
    """
    reduction: str
    trials: int = 20
    seed: int = 0
    density: float = 0.3
    max_part_size: int = 2
    max_vertices: int = 6
    workers: int = 1
    budget: int = 60
    params: Dict[str, object] = field(default_factory=dict)

    def as_dict(self) -> Dict[str, object]:
        return {'reduction': self.reduction, 'trials': self.trials,
                'seed': self.seed, 'density': self.density,
                'max_part_size': self.max_part_size,
                'max_vertices': self.max_vertices, 'budget': self.budget,
                'params': {k: self.params[k] for k in sorted(self.params)}}


@dataclass
class TrialRecord:
    index: int
    status: str
    predicted: str = ''
    value_in: Optional[int] = None
    lhs: Optional[int] = None
    rhs: Optional[int] = None
    equality: Optional[bool] = None
    witness_ok: Optional[bool] = None
    size_in: Dict[str, int] = field(default_factory=dict)
    size_out: Dict[str, int] = field(default_factory=dict)
    parameters: Dict[str, object] = field(default_factory=dict)
    runtimes: Dict[str, float] = field(default_factory=dict)
    reason: str = ''
    artifacts: Dict[str, str] = field(default_factory=dict)

    def to_dict(self, include_timing: bool = True) -> Dict[str, object]:
        record: Dict[str, object] = {
            'index': self.index, 'status': self.status,
            'predicted': self.predicted, 'value_in': self.value_in,
            'lhs': self.lhs, 'rhs': self.rhs, 'equality': self.equality,
            'witness_ok': self.witness_ok, 'size_in': self.size_in,
            'size_out': self.size_out, 'parameters': self.parameters,
        }
        if self.reason:
            record['reason'] = self.reason
        if self.artifacts:
            record['artifacts'] = self.artifacts
        if include_timing:
            record['runtimes'] = self.runtimes
        return record


@dataclass
class VerificationReport:
    config: VerificationConfig
    records: List[TrialRecord]

    def count(self, status: str) -> int:
        return sum(record.status == status for record in self.records)

    @property
    def pass_rate(self) -> Optional[float]:
        decided = self.count(PASS) + self.count(FAIL)
        if not decided:
            return None
        return self.count(PASS) / decided

    @property
    def failed(self) -> bool:
        return self.count(FAIL) > 0

    def to_json(self, include_timing: bool = True) -> str:
        """
        Versioned JSON report; without timing fields two runs with the
        same seed produce identical text.
        """
        payload = {
            'schema_version': SCHEMA_VERSION,
            'config': self.config.as_dict(),
            'passed': self.count(PASS),
            'failed': self.count(FAIL),
            'skipped': self.count(SKIPPED),
            'pass_rate': self.pass_rate,
            'records': [r.to_dict(include_timing) for r in self.records],
        }
        return json.dumps(payload, indent=2, sort_keys=True)

    def summary(self) -> pd.DataFrame:
        """One row per trial: status, the two compared values and sizes."""
        rows = []
        for record in self.records:
            rows.append({
                'trial': record.index, 'status': record.status,
                'lhs': record.lhs, 'rhs': record.rhs,
                'equality': record.equality,
                'witness_ok': record.witness_ok,
                'edges_in': record.size_in.get('edges',
                                               record.size_in.get('clauses')),
                'edges_out': record.size_out.get('edges'),
            })
        return pd.DataFrame(rows, columns=['trial', 'status', 'lhs', 'rhs',
                                           'equality', 'witness_ok',
                                           'edges_in', 'edges_out'])


def _param(config: VerificationConfig, key: str, choices: Sequence,
           rng: np.random.Generator):
    if key in config.params:
        return config.params[key]
    return choices[int(rng.integers(len(choices)))]


def _graph_of(instance) -> Hypergraph:
    if isinstance(instance, PartitionedHypergraph):
        return instance.base
    return instance


def _size(instance: Source) -> Dict[str, int]:
    if isinstance(instance, CnfFormula):
        return {'variables': instance.n, 'clauses': instance.m}
    graph = _graph_of(instance)
    return {'vertices': graph.n, 'edges': len(graph)}


def _artifacts(instance: Source, prefix: str) -> Dict[str, str]:
    if isinstance(instance, CnfFormula):
        return {f"{prefix}.cnf": format_dimacs(instance)}
    texts = {f"{prefix}.hg": format_hypergraph(_graph_of(instance))}
    if isinstance(instance, PartitionedHypergraph):
        texts[f"{prefix}.parts"] = format_partition(instance)
    return texts


def _simplex(rng, config, index) -> ReductionOutput:
    k = int(_param(config, 'k', (3, 4), rng))
    graph = random_partite(rng, cycle_graph(3), config.max_part_size,
                           config.density)
    return simplex_reduction(graph, k)


def _cycle(rng, config, index) -> ReductionOutput:
    length = int(_param(config, 'length', (4, 5, 6), rng))
    graph = random_partite(rng, cycle_graph(3), config.max_part_size,
                           config.density)
    return cycle_reduction(graph, length)


def _lift(rng, config, index) -> ReductionOutput:
    pattern = LIFT_PATTERNS[int(rng.integers(len(LIFT_PATTERNS)))]
    structure = structure_finder(pattern)
    graph = random_partite(rng, structure.restricted, config.max_part_size,
                           config.density)
    part_size = config.params.get('N')
    output = lift_reduction(graph, structure.relabelled, structure.length,
                            structure.s,
                            None if part_size is None else int(part_size))
    output.parameters['structure'] = structure.describe()
    return output


def _sat3(rng, config, index) -> ReductionOutput:
    n = int(rng.integers(3, 5))
    m = int(rng.integers(1, 3))
    return sat_to_triangle(random_3cnf(rng, n, m))


def _blowup(rng, config, index) -> ReductionOutput:
    b = int(_param(config, 'b', (2, 3), rng))
    family = BLOWUP_FAMILIES[int(rng.integers(len(BLOWUP_FAMILIES)))]
    graph = random_partite(rng, cycle_graph(3), config.max_part_size,
                           config.density)
    return blowup_reduction(graph, family, b)


def _uniform_source(rng, config) -> Tuple[Hypergraph, int]:
    k = int(_param(config, 'k', (2, 3), rng))
    t = int(_param(config, 't', tuple(range(1, k)), rng))
    n = int(rng.integers(k + 1, max(k + 1, config.max_vertices) + 1))
    return random_hypergraph(rng, n, k, config.density), t


def _uplift_k(rng, config, index) -> ReductionOutput:
    graph, t = _uniform_source(rng, config)
    return uplift_uniformity(graph, t)


def _uplift_kt(rng, config, index) -> ReductionOutput:
    graph, t = _uniform_source(rng, config)
    return uplift_intersection(graph, t)


def _max2sat(rng, config, index) -> ReductionOutput:
    default = INTERSECT_TWO if index % 2 == 0 else INTERSECT_ONE
    variant = str(config.params.get('variant', default))
    n = int(rng.integers(2, 5))
    m = int(rng.integers(1, 3 * n // 2 + 1))
    return max2sat_to_e23(random_3occ_2cnf(rng, n, m), variant)


def _sunflower(rng, config, index) -> ReductionOutput:
    t = int(_param(config, 't', (1, 2), rng))
    r = int(config.params.get('r', 2))
    n = int(rng.integers(3, min(max(config.max_vertices, 3), 5) + 1))
    graph = random_hypergraph(rng, n, 3, config.density)
    return sunflower_step(graph, t, r)


REDUCTIONS: Dict[str, Callable[..., ReductionOutput]] = {
    'simplex': _simplex,
    'cycle': _cycle,
    'lift': _lift,
    'sat3': _sat3,
    'blowup': _blowup,
    'uplift-k': _uplift_k,
    'uplift-kt': _uplift_kt,
    'max2sat': _max2sat,
    'sunflower': _sunflower,
}
CAMPAIGNS = tuple(REDUCTIONS) + ('matching',)


def measure(name: str, instance: Source, patterns: Sequence[Hypergraph],
            budget: int) -> Tuple[int, Optional[SolveResult]]:
    """
    Exact value of a measure on a source or produced instance.

    Parameters
    ----------
    name: str
        ``'rem'``, ``'rem-partite'``, ``'ex'``, ``'sat'`` or ``'maxsat'``.
    instance: Source
    patterns: Sequence[Hypergraph]
        Ignored by the partite and formula measures.
    budget: int

    Returns
    -------
    Tuple[int, Optional[SolveResult]]
        The value and, for hypergraph measures, the oracle result.
    """
    if name == 'sat':
        return int(is_satisfiable(instance)), None  # type: ignore
    if name == 'maxsat':
        return max_sat(instance)[0], None  # type: ignore
    if name == 'rem-partite':
        result = solve_rem(RemProblem(instance, canonical_only=True),
                           budget)
    elif name == 'rem':
        result = solve_rem(RemProblem(instance, tuple(patterns)), budget)
    elif name == 'ex':
        result = solve_ex(RemProblem(instance, tuple(patterns)), budget)
    else:
        raise PreconditionError(f"unknown measure {name!r}")
    return result.value, result


def _is_free(instance, patterns: Sequence[Hypergraph],
             canonical: bool) -> bool:
    return not RemProblem(instance, tuple(patterns), canonical).copy_masks()


def check_witness(output: ReductionOutput, result_in: Optional[SolveResult],
                  result_out: Optional[SolveResult]) -> Optional[bool]:
    """
    Carry an optimal witness across the reduction and check it is still
    optimal on the other side. ``None`` when the reduction has no
    witness translation.
    """
    relation = output.relation
    if output.name in ('simplex', 'cycle') and result_out is not None:
        source: PartitionedHypergraph = output.source  # type: ignore
        deleted = output.translate_witness(result_out.witness)
        rest = source.with_base(source.base.without_edges(deleted))
        return len(deleted) <= result_out.value and _is_free(rest, (), True)
    if output.name in ('uplift-k', 'uplift-kt') and result_out is not None:
        kept = output.translate_witness(result_out.witness)
        graph = _graph_of(output.source)
        return len(kept) == result_out.value \
            and _is_free(graph.spanning(kept), output.patterns_in, False)
    if output.name == 'sunflower' and result_in is not None:
        extended = extend_witness(output, result_in.witness)
        return len(extended) == relation.expected(result_in.value) \
            and _is_free(output.graph.spanning(extended),
                         output.patterns_out, False)
    if output.name == 'sat3' and result_out is not None:
        formula: CnfFormula = output.source  # type: ignore
        if result_out.value != relation.offset:
            return None
        assignment = assignment_from_deletion(formula, result_out.witness)
        return satisfied_count(formula, assignment) == formula.m
    return None


def _draw(name: str, rng: np.random.Generator,
          config: VerificationConfig, index: int) -> ReductionOutput:
    output = REDUCTIONS[name](rng, config, index)
    for _ in range(MAX_DRAWS - 1):
        if len(output.graph) <= config.budget and (
                isinstance(output.source, CnfFormula)
                or len(_graph_of(output.source)) <= config.budget):
            break
        output = REDUCTIONS[name](rng, config, index)
    return output


def _matching_trial(index: int, rng: np.random.Generator,
                    config: VerificationConfig) -> TrialRecord:
    k = int(_param(config, 'k', (2, 3), rng))
    r = int(_param(config, 'r', (2, 3), rng))
    n = int(rng.integers(k + 1, max(k + 1, config.max_vertices) + 1))
    graph = random_hypergraph(rng, n, k, config.density)
    record = TrialRecord(index, PASS, "ex_solver = ex_oracle",
                         size_in=_size(graph), size_out=_size(graph),
                         parameters={'k': k, 'r': r})
    start = perf_counter()
    solved = solve_matching_ex(graph, r)
    record.runtimes['solve_out'] = perf_counter() - start
    try:
        start = perf_counter()
        oracle = solve_ex(RemProblem(graph, (matching_graph(r, k),)),
                          config.budget)
        record.runtimes['solve_in'] = perf_counter() - start
    except BudgetExceededError as error:
        record.status, record.reason = SKIPPED, str(error)
        return record
    record.value_in, record.lhs, record.rhs = \
        oracle.value, solved.value, oracle.value
    record.equality = solved.value == oracle.value
    record.witness_ok = _is_free(graph.spanning(solved.witness),
                                 (matching_graph(r, k),), False)
    if not (record.equality and record.witness_ok):
        record.status = FAIL
        record.artifacts = _artifacts(graph, 'source')
    return record


def run_trial(index: int, seed: np.random.SeedSequence,
              config: VerificationConfig) -> TrialRecord:
    """
    One seeded trial: draw a source instance, reduce it, solve both
    sides exactly and compare them with the predicted relation.

    Parameters
    ----------
    index: int
    seed: np.random.SeedSequence
        Child seed of the campaign seed for this trial.
    config: VerificationConfig

    Returns
    -------
    TrialRecord
    """
    rng = np.random.default_rng(seed)
    if config.reduction == 'matching':
        return _matching_trial(index, rng, config)
    start = perf_counter()
    output = _draw(config.reduction, rng, config, index)
    relation = output.relation
    record = TrialRecord(
        index, PASS, relation.text, size_in=_size(output.source),
        size_out=_size(output.produced),
        parameters={key: value for key, value in output.parameters.items()
                    if isinstance(value, (bool, int, float, str))})
    record.runtimes['reduce'] = perf_counter() - start
    try:
        start = perf_counter()
        value_in, result_in = measure(relation.measure_in, output.source,
                                      output.patterns_in, config.budget)
        record.runtimes['solve_in'] = perf_counter() - start
        start = perf_counter()
        value_out, result_out = measure(relation.measure_out,
                                        output.produced,
                                        output.patterns_out, config.budget)
        record.runtimes['solve_out'] = perf_counter() - start
    except BudgetExceededError as error:
        record.status, record.reason = SKIPPED, str(error)
        return record
    record.value_in, record.lhs = value_in, value_out
    record.rhs = relation.expected(value_in)
    record.equality = value_out == record.rhs
    record.witness_ok = check_witness(output, result_in, result_out)
    if not relation.holds(value_out, value_in) or record.witness_ok is False:
        record.status = FAIL
        record.artifacts = {**_artifacts(output.source, 'source'),
                            **_artifacts(output.produced, 'produced')}
    return record


def run_verification(config: VerificationConfig,
                     strict: bool = False) -> VerificationReport:
    """
    Run a seeded verification campaign.

    Per-trial seeds are spawned from ``config.seed``, so the report
    depends only on the configuration, never on ``workers``.

    Parameters
    ----------
    config: VerificationConfig
    strict: bool
        Raise :class:`VerificationFailure` when a trial fails.

    Returns
    -------
    VerificationReport
    """
    if config.reduction not in CAMPAIGNS:
        raise PreconditionError(
            f"unknown reduction {config.reduction!r}, expected one of "
            f"{', '.join(CAMPAIGNS)}")
    if config.trials < 0:
        raise PreconditionError(f"negative trial count {config.trials}")
    seeds = np.random.SeedSequence(config.seed).spawn(config.trials)
    indices = list(range(config.trials))
    if config.workers > 1 and config.trials > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as executor:
            records = list(executor.map(run_trial, indices, seeds,
                                        [config] * config.trials))
    else:
        records = [run_trial(i, s, config) for i, s in zip(indices, seeds)]
    records.sort(key=lambda record: record.index)
    for record in records:
        logger.info("%s trial %d: %s (lhs=%s rhs=%s)", config.reduction,
                    record.index, record.status, record.lhs, record.rhs)
        if record.status == FAIL:
            logger.warning("%s trial %d failed: %s gave %s, expected %s",
                           config.reduction, record.index, record.predicted,
                           record.lhs, record.rhs)
    report = VerificationReport(config, records)
    if strict and report.failed:
        raise VerificationFailure(
            f"{report.count(FAIL)} of {config.trials} {config.reduction} "
            f"trials failed")
    return report
