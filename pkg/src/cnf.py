import logging
from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from src.errors import ParseError, PreconditionError

logger = logging.getLogger(__name__)

Clause = Tuple[int, ...]
Assignment = Tuple[bool, ...]
MAX_TRUTH_TABLE_VARIABLES = 20


@dataclass(frozen=True)
class CnfFormula:
    """
    CNF formula over variables ``1..n`` with DIMACS literals: ``v`` is
    the variable, ``-v`` its negation.

    A clause never repeats a variable, so neither ``x or x`` nor
    ``x or not x`` can occur.
    """
    n: int
    clauses: Tuple[Clause, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'clauses',
                           tuple(tuple(c) for c in self.clauses))
        if self.n < 0:
            raise PreconditionError(f"negative variable count {self.n}")
        for clause in self.clauses:
            if not clause:
                raise PreconditionError("empty clause")
            for literal in clause:
                if literal == 0 or abs(literal) > self.n:
                    raise PreconditionError(
                        f"literal {literal} outside variables 1..{self.n}")
            if len({abs(lit) for lit in clause}) != len(clause):
                raise PreconditionError(
                    f"clause {clause} repeats a variable")

    @property
    def m(self) -> int:
        return len(self.clauses)

    def width(self) -> Optional[int]:
        """Common clause width, ``None`` when widths differ or m = 0."""
        widths = {len(c) for c in self.clauses}
        return widths.pop() if len(widths) == 1 else None

    def occurrences(self, literal: int) -> List[int]:
        """Indices of the clauses containing ``literal``."""
        return [i for i, c in enumerate(self.clauses) if literal in c]


def parse_dimacs(text: str) -> CnfFormula:
    """
    Parse DIMACS cnf: ``c`` comment lines, one ``p cnf n m`` header and
    clauses terminated by ``0`` (a clause may span lines).

    Parameters
    ----------
    text: str

    Returns
    -------
    CnfFormula
    """
    header = None
    clauses: List[Clause] = []
    current: List[int] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith('c') or line.startswith('%'):
            continue
        if line.startswith('p'):
            fields = line.split()
            if len(fields) != 4 or fields[1] != 'cnf':
                raise ParseError(f"bad problem line {line!r}", number)
            try:
                header = (int(fields[2]), int(fields[3]))
            except ValueError:
                raise ParseError(f"bad problem line {line!r}", number)
            continue
        if header is None:
            raise ParseError("clause before the 'p cnf' header", number)
        for field in line.split():
            try:
                literal = int(field)
            except ValueError:
                raise ParseError(f"bad literal {field!r}", number)
            if literal == 0:
                clauses.append(tuple(current))
                current = []
            else:
                current.append(literal)
    if header is None:
        raise ParseError("missing 'p cnf' header")
    if current:
        clauses.append(tuple(current))
    n, m = header
    if len(clauses) != m:
        raise ParseError(f"header announces {m} clauses, found {len(clauses)}")
    try:
        return CnfFormula(n, tuple(clauses))
    except PreconditionError as error:
        raise ParseError(str(error))


def format_dimacs(formula: CnfFormula) -> str:
    lines = [f"p cnf {formula.n} {formula.m}"]
    lines.extend(' '.join(map(str, clause)) + ' 0'
                 for clause in formula.clauses)
    return '\n'.join(lines) + '\n'


def read_dimacs(path: str) -> CnfFormula:
    with open(path) as handle:
        return parse_dimacs(handle.read())


def write_dimacs(formula: CnfFormula, path: str) -> None:
    with open(path, 'w') as handle:
        handle.write(format_dimacs(formula))


def literal_value(literal: int, assignment: Sequence[bool]) -> bool:
    value = assignment[abs(literal) - 1]
    return value if literal > 0 else not value


def satisfied_count(formula: CnfFormula, assignment: Sequence[bool]) -> int:
    return sum(any(literal_value(lit, assignment) for lit in clause)
               for clause in formula.clauses)


def _assignments(formula: CnfFormula):
    if formula.n > MAX_TRUTH_TABLE_VARIABLES:
        raise PreconditionError(
            f"truth table supports at most {MAX_TRUTH_TABLE_VARIABLES} "
            f"variables, got {formula.n}")
    return product((False, True), repeat=formula.n)


def find_satisfying_assignment(formula: CnfFormula) -> Optional[Assignment]:
    """First satisfying assignment in truth-table order, if any."""
    for assignment in _assignments(formula):
        if satisfied_count(formula, assignment) == formula.m:
            return assignment
    return None


def is_satisfiable(formula: CnfFormula) -> bool:
    return find_satisfying_assignment(formula) is not None


def max_sat(formula: CnfFormula) -> Tuple[int, Assignment]:
    """
    Maximum number of simultaneously satisfiable clauses.

    Parameters
    ----------
    formula: CnfFormula

    Returns
    -------
    Tuple[int, Assignment]
        The optimum and the first assignment reaching it.
    """
    best = -1
    best_assignment: Assignment = ()
    for assignment in _assignments(formula):
        count = satisfied_count(formula, assignment)
        if count > best:
            best, best_assignment = count, assignment
            if best == formula.m:
                break
    return best, best_assignment


@dataclass(frozen=True)
class Preprocessed:
    """
    Outcome of :func:`preprocess_2cnf`.

    ``variables[i]`` is the original id of reduced variable ``i + 1``;
    ``forced`` fixes the eliminated variables that occurred, and
    ``removed`` counts the clauses they satisfied.
    """
    formula: CnfFormula
    variables: Tuple[int, ...]
    forced: Dict[int, bool]
    removed: int

    def lift_assignment(self, assignment: Sequence[bool],
                        n: int) -> Assignment:
        """Extend an assignment of the reduced formula to the original
        ``n`` variables; untouched variables become false."""
        values = [False] * n
        for original, value in self.forced.items():
            values[original - 1] = value
        for i, original in enumerate(self.variables):
            values[original - 1] = assignment[i]
        return tuple(values)


def preprocess_2cnf(formula: CnfFormula) -> Preprocessed:
    """
    Satisfy every variable occurring with one polarity only and drop its
    clauses, repeatedly, then renumber the surviving variables.

    Afterwards every variable occurs with both polarities, so in a
    formula with at most 3 occurrences per variable each literal occurs
    at most twice.

    Parameters
    ----------
    formula: CnfFormula

    Returns
    -------
    Preprocessed
    """
    clauses = list(formula.clauses)
    forced: Dict[int, bool] = {}
    changed = True
    while changed:
        changed = False
        literals = {lit for clause in clauses for lit in clause}
        for literal in sorted(literals, key=lambda lit: (abs(lit), lit)):
            if -literal not in literals and abs(literal) not in forced:
                forced[abs(literal)] = literal > 0
                clauses = [c for c in clauses if literal not in c]
                changed = True
                break
    survivors = sorted({abs(lit) for clause in clauses for lit in clause})
    renumber = {v: i + 1 for i, v in enumerate(survivors)}
    reduced = tuple(tuple(renumber[abs(lit)] * (1 if lit > 0 else -1)
                          for lit in clause) for clause in clauses)
    removed = formula.m - len(clauses)
    logger.debug("2-CNF preprocessing fixed %d variables, removed %d "
                 "clauses", len(forced), removed)
    return Preprocessed(CnfFormula(len(survivors), reduced),
                        tuple(survivors), forced, removed)
