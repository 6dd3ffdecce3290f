import argparse
import logging
import os
import sys
from typing import Dict, List, Optional, Sequence

from src.cnf import read_dimacs
from src.errors import BudgetExceededError, HypergraphError, ParseError
from src.homomorphism import core, select_hom_minimal
from src.hypergraph import Hypergraph, matching_graph
from src.hypergraph_io import (read_hypergraph, read_partition,
                               write_hypergraph, write_metadata,
                               write_partition)
from src.matching_solver import growth_profile, solve_matching_ex
from src.oracles import RemProblem, SolveResult, solve_ex, solve_rem
from src.partition import PartitionedHypergraph
from src.patterns import parse_pattern
from src.reductions import (ReductionOutput, blowup_reduction,
                            cycle_reduction, lift_reduction,
                            restricted_pattern, simplex_reduction)
from src.sat_reductions import (INTERSECT_ONE, INTERSECT_TWO,
                                max2sat_to_e23, sat_to_triangle)
from src.settings import Settings, load_settings
from src.structure_finder import structure_finder
from src.uniformity import (sunflower_step, uplift_intersection,
                            uplift_uniformity)
from src.verification import (CAMPAIGNS, FAIL, PASS, SKIPPED,
                              VerificationConfig, run_verification)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_PARSE = 2
EXIT_BUDGET = 3
EXIT_INTERNAL = 4

PINNED_PARAMS = ('k', 'length', 'b', 't', 'r', 'variant', 'N')


def _print_result(result: SolveResult, witness: bool) -> None:
    print(result.value)
    if witness:
        for edge in result.witness:
            print('e ' + ' '.join(map(str, edge)))


def _budget(args: argparse.Namespace, settings: Settings) -> int:
    return args.budget if args.budget is not None else settings.edge_budget


def _patterns(names: Sequence[str], k: int) -> List[Hypergraph]:
    return [parse_pattern(name, k) for name in names]


def _cmd_solve(args: argparse.Namespace, settings: Settings) -> int:
    graph = read_hypergraph(args.instance)
    patterns = _patterns(args.pattern, graph.k)
    problem = RemProblem(graph, tuple(patterns))
    if args.command == 'rem':
        result = solve_rem(problem, _budget(args, settings))
    else:
        result = solve_ex(problem, _budget(args, settings))
    _print_result(result, args.witness)
    return EXIT_OK


def _cmd_rem_partite(args: argparse.Namespace, settings: Settings) -> int:
    graph = read_hypergraph(args.instance)
    pattern = parse_pattern(args.pattern, graph.k)
    partitioned = read_partition(args.parts, graph, pattern)
    result = solve_rem(RemProblem(partitioned, canonical_only=True),
                       _budget(args, settings))
    _print_result(result, args.witness)
    return EXIT_OK


def _cmd_matching(args: argparse.Namespace, settings: Settings) -> int:
    graph = read_hypergraph(args.instance)
    result = solve_matching_ex(graph, args.r,
                               prune=args.prune or settings.prune,
                               materialize=args.materialize)
    _print_result(result, args.witness)
    if not args.oracle_check:
        return EXIT_OK
    oracle = solve_ex(RemProblem(graph, (matching_graph(args.r, graph.k),)),
                      _budget(args, settings))
    print(f"oracle: {oracle.value}")
    if oracle.value != result.value:
        logger.error("matching solver gave %d, oracle %d", result.value,
                     oracle.value)
        return EXIT_VERIFICATION
    return EXIT_OK


def _read_partitioned(args: argparse.Namespace,
                      pattern: Hypergraph) -> PartitionedHypergraph:
    graph = read_hypergraph(args.instance)
    return read_partition(args.parts, graph, pattern)


def _triangle() -> Hypergraph:
    return parse_pattern('c3')


def _reduce(args: argparse.Namespace) -> ReductionOutput:
    name = args.reduction
    if name == 'simplex':
        return simplex_reduction(_read_partitioned(args, _triangle()), args.k)
    if name == 'cycle':
        return cycle_reduction(_read_partitioned(args, _triangle()), args.l)
    if name == 'lift':
        pattern = parse_pattern(args.pattern)
        if args.l is None or args.s is None:
            structure = structure_finder(pattern)
            logger.info("lift structure: %s", structure.describe())
            pattern, length, s = (structure.relabelled, structure.length,
                                  structure.s)
        else:
            length, s = args.l, args.s
        graph = _read_partitioned(args,
                                  restricted_pattern(pattern, length, s))
        return lift_reduction(graph, pattern, length, s, args.N,
                              args.full_size)
    if name == 'blowup':
        family = [parse_pattern(p) for p in args.family]
        graph = _read_partitioned(args, core(select_hom_minimal(family)))
        return blowup_reduction(graph, family, args.b)
    if name == 'sat3':
        return sat_to_triangle(read_dimacs(args.formula))
    if name == 'max2sat':
        return max2sat_to_e23(read_dimacs(args.formula), args.variant)
    graph = read_hypergraph(args.instance)
    if name == 'uplift-k':
        return uplift_uniformity(graph, args.t)
    if name == 'uplift-kt':
        return uplift_intersection(graph, args.t)
    return sunflower_step(graph, args.t, args.r)


def _output_prefix(args: argparse.Namespace) -> str:
    if args.out:
        return args.out
    source = getattr(args, 'instance', None) or args.formula
    stem, _ = os.path.splitext(source)
    return f"{stem}.{args.reduction}"


def write_output(output: ReductionOutput, prefix: str) -> List[str]:
    """
    Write the produced instance, its partition when it has one, and the
    metadata sidecar; return the written paths.
    """
    paths = [f"{prefix}.hg"]
    write_hypergraph(output.graph, paths[0])
    if isinstance(output.produced, PartitionedHypergraph):
        paths.append(f"{prefix}.parts")
        write_partition(output.produced, paths[-1])
    paths.append(f"{prefix}.meta")
    write_metadata(paths[-1], output.metadata(), output.back_map_pairs())
    return paths


def _cmd_reduce(args: argparse.Namespace, settings: Settings) -> int:
    if args.reduction == 'find-structure':
        print(structure_finder(parse_pattern(args.pattern)).describe())
        return EXIT_OK
    output = _reduce(args)
    paths = write_output(output, _output_prefix(args))
    relation = output.relation
    print(f"{output.name}: {relation.text}")
    if relation.op == 'iff':
        print(f"predicted: {relation.measure_out} = {relation.offset} "
              f"iff satisfiable")
    for path in paths:
        print(f"wrote {path}")
    return EXIT_OK


def _pinned(args: argparse.Namespace) -> Dict[str, object]:
    return {key: getattr(args, key) for key in PINNED_PARAMS
            if getattr(args, key, None) is not None}


def _cmd_verify(args: argparse.Namespace, settings: Settings) -> int:
    config = VerificationConfig(
        reduction=args.reduction, trials=args.trials, seed=args.seed,
        density=_or(args.density, settings.density),
        max_part_size=_or(args.max_part_size, settings.max_part_size),
        max_vertices=_or(args.max_vertices, settings.max_vertices),
        workers=_or(args.workers, settings.workers),
        budget=_budget(args, settings), params=_pinned(args))
    report = run_verification(config)
    if args.report:
        with open(args.report, 'w') as handle:
            handle.write(report.to_json(include_timing=not args.no_timing))
    print(report.summary().to_string(index=False))
    decided = report.count(PASS) + report.count(FAIL)
    print(f"{args.reduction}: {report.count(PASS)}/{decided} passed, "
          f"{report.count(SKIPPED)} skipped")
    return EXIT_VERIFICATION if report.failed else EXIT_OK


def _or(value, default):
    return default if value is None else value


def _cmd_growth(args: argparse.Namespace, settings: Settings) -> int:
    budget = args.oracle_budget
    if budget is None:
        budget = settings.edge_budget
    table, slope = growth_profile(args.ns, args.r, args.k,
                                  oracle_budget=budget,
                                  materialize=args.materialize)
    print(table.to_string(index=False))
    print(f"log-log slope of the last family size: {slope:.3f}")
    return EXIT_OK


def _add_solve_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--witness', action='store_true',
                        help="print the witness edges")
    parser.add_argument('--budget', type=int,
                        help="oracle edge budget (settings by default)")


def _add_reduce_parsers(parser: argparse.ArgumentParser) -> None:
    sub = parser.add_subparsers(dest='reduction', required=True)

    def partitioned(name: str, text: str) -> argparse.ArgumentParser:
        child = sub.add_parser(name, help=text)
        child.add_argument('instance')
        child.add_argument('parts')
        child.add_argument('--out', help="output path prefix")
        return child

    def plain(name: str, text: str, source: str = 'instance'
              ) -> argparse.ArgumentParser:
        child = sub.add_parser(name, help=text)
        child.add_argument(source)
        child.add_argument('--out', help="output path prefix")
        return child

    partitioned('simplex', "triangle problem to K_{k+1}^(k)") \
        .add_argument('--k', type=int, default=3)
    partitioned('cycle', "triangle problem to C_l") \
        .add_argument('--l', type=int, default=5)
    lift = partitioned('lift', "s-graph problem to a k-graph pattern")
    lift.add_argument('--pattern', required=True)
    lift.add_argument('--l', type=int)
    lift.add_argument('--s', type=int)
    lift.add_argument('--N', type=int)
    lift.add_argument('--full-size', action='store_true',
                      help="use N = n^s")
    blow = partitioned('blowup', "b-blowup for a pattern family")
    blow.add_argument('--family', nargs='+', required=True)
    blow.add_argument('--b', type=int, default=2)
    plain('sat3', "3-CNF to 3-partite triangle deletion", 'formula')
    plain('max2sat', "3-OCC MAX-2-SAT to intersecting pairs", 'formula') \
        .add_argument('--variant', choices=(INTERSECT_TWO, INTERSECT_ONE),
                      default=INTERSECT_TWO)
    plain('uplift-k', "raise uniformity") \
        .add_argument('--t', type=int, required=True)
    plain('uplift-kt', "raise uniformity and intersection size") \
        .add_argument('--t', type=int, required=True)
    flower = plain('sunflower', "add one petal")
    flower.add_argument('--t', type=int, required=True)
    flower.add_argument('--r', type=int, default=2)
    sub.add_parser('find-structure', help="locate a lift structure") \
        .add_argument('pattern')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='hyperedit',
        description="Exact edge-modification oracles and reductions for "
                    "uniform hypergraphs.")
    parser.add_argument('--config', help="settings file (settings.ini)")
    parser.add_argument('-v', '--verbose', action='store_true')
    sub = parser.add_subparsers(dest='command', required=True)

    for name in ('rem', 'ex'):
        child = sub.add_parser(name, help=f"exact {name} of an instance")
        child.add_argument('instance')
        child.add_argument('--pattern', action='append', required=True)
        _add_solve_options(child)

    child = sub.add_parser('rem-partite', help="canonical-copy deletion")
    child.add_argument('instance')
    child.add_argument('parts')
    child.add_argument('--pattern', required=True,
                       help="pattern indexing the parts")
    _add_solve_options(child)

    child = sub.add_parser('matching', help="ex of the r-matching")
    child.add_argument('instance')
    child.add_argument('--r', type=int, default=2)
    child.add_argument('--prune', action='store_true')
    child.add_argument('--materialize', action='store_true')
    child.add_argument('--oracle-check', action='store_true')
    _add_solve_options(child)

    _add_reduce_parsers(sub.add_parser('reduce', help="run a reduction"))

    child = sub.add_parser('verify', help="seeded verification campaign")
    child.add_argument('reduction', choices=CAMPAIGNS)
    child.add_argument('--trials', type=int, default=20)
    child.add_argument('--seed', type=int, default=0)
    child.add_argument('--density', type=float)
    child.add_argument('--max-part-size', type=int)
    child.add_argument('--max-vertices', type=int)
    child.add_argument('--workers', type=int)
    child.add_argument('--budget', type=int)
    child.add_argument('--report', help="write the JSON report here")
    child.add_argument('--no-timing', action='store_true',
                       help="leave runtimes out of the report")
    for key in ('k', 'length', 'b', 't', 'r', 'N'):
        child.add_argument(f'--{key}', type=int)
    child.add_argument('--variant', choices=(INTERSECT_TWO, INTERSECT_ONE))

    child = sub.add_parser('growth', help="candidate family growth")
    child.add_argument('--ns', type=int, nargs='+',
                       default=[6, 7, 8, 9, 10])
    child.add_argument('--r', type=int, default=2)
    child.add_argument('--k', type=int, default=3)
    child.add_argument('--oracle-budget', type=int,
                       help="brute-force edge budget (settings by default)")
    child.add_argument('--materialize', action='store_true',
                       help="also build the level-k family")
    return parser


COMMANDS = {
    'rem': _cmd_solve,
    'ex': _cmd_solve,
    'rem-partite': _cmd_rem_partite,
    'matching': _cmd_matching,
    'reduce': _cmd_reduce,
    'verify': _cmd_verify,
    'growth': _cmd_growth,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one command and map failures to exit codes: 2 for unreadable
    input, 3 for an exceeded oracle budget, 4 for precondition and
    internal errors.

    Parameters
    ----------
    argv: Sequence[str], optional
        Arguments without the program name, ``sys.argv[1:]`` by default.

    Returns
    -------
    int
    """
    args = build_parser().parse_args(argv)
    try:
        settings = load_settings(args.config, create_missing=True)
        level = 'DEBUG' if args.verbose else settings.log_level
        logging.basicConfig(stream=sys.stderr, level=level,
                            format='%(levelname)s %(name)s: %(message)s')
        return COMMANDS[args.command](args, settings)
    except (ParseError, OSError) as error:
        logger.error("cannot read input: %s", error)
        return EXIT_PARSE
    except BudgetExceededError as error:
        logger.error("%s", error)
        return EXIT_BUDGET
    except (HypergraphError, AssertionError, ValueError) as error:
        logger.error("%s: %s", type(error).__name__, error)
        return EXIT_INTERNAL
