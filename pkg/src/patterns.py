import os
import re
from enum import Enum
from typing import Optional, Tuple

from src.errors import ParseError
from src.hypergraph import (Hypergraph, complete_graph, cycle_graph,
                            intersecting_pair, matching_graph, single_edge,
                            sunflower)


class PatternKind(Enum):
    CYCLE = 1
    COMPLETE = 2
    MATCHING = 3
    INTERSECTING_PAIR = 4
    SUNFLOWER = 5
    EDGE = 6


class PatternFactory:
    """
    Build a named pattern once its parameters and uniformity are known.

    Parameters
    ----------
    kind: PatternKind
    """

    def __init__(self, kind: PatternKind) -> None:
        self.kind = kind

    def get_pattern(self, params: Tuple[int, ...], k: int) -> Hypergraph:
        """
        Return the pattern for the given parameters.

        Parameters
        ----------
        params: Tuple[int, ...]
            Size parameters, as parsed from the pattern name.
        k: int
            Uniformity used when the name does not fix it.

        Returns
        -------
        Hypergraph
        """
        if self.kind == PatternKind.CYCLE:
            return cycle_graph(params[0])
        elif self.kind == PatternKind.COMPLETE:
            return complete_graph(params[0], params[1] if len(params) > 1
                                  else 2)
        elif self.kind == PatternKind.MATCHING:
            return matching_graph(params[0], params[1] if len(params) > 1
                                  else k)
        elif self.kind == PatternKind.INTERSECTING_PAIR:
            return intersecting_pair(params[0], params[1])
        elif self.kind == PatternKind.SUNFLOWER:
            return sunflower(params[0], params[1], params[2])
        elif self.kind == PatternKind.EDGE:
            return single_edge(params[0] if params else k)
        raise ParseError(f"unknown pattern kind {self.kind}")


NAME_PATTERNS = [
    (re.compile(r'^c(\d+)$'), PatternKind.CYCLE),
    (re.compile(r'^k(\d+)(?:_(\d+))?$'), PatternKind.COMPLETE),
    (re.compile(r'^m(\d+)(?:_(\d+))?$'), PatternKind.MATCHING),
    (re.compile(r'^e_(\d+)_(\d+)$'), PatternKind.INTERSECTING_PAIR),
    (re.compile(r'^s_(\d+)_(\d+)_(\d+)$'), PatternKind.SUNFLOWER),
    (re.compile(r'^edge(?:_(\d+))?$'), PatternKind.EDGE),
]


def parse_pattern(name: str, k: Optional[int] = None) -> Hypergraph:
    """
    Resolve a pattern name (``c5``, ``k4_3``, ``m2``, ``e_2_3``,
    ``s_1_3_2``, ``edge``) or a path to a hypergraph file.

    Parameters
    ----------
    name: str
    k: int, optional
        Instance uniformity, used by ``m<r>`` and ``edge``.

    Returns
    -------
    Hypergraph
    """
    lowered = name.strip().lower()
    for regex, kind in NAME_PATTERNS:
        match = regex.match(lowered)
        if match:
            params = tuple(int(g) for g in match.groups() if g is not None)
            if kind in (PatternKind.MATCHING, PatternKind.EDGE) \
                    and k is None and len(params) < (2 if kind ==
                                                     PatternKind.MATCHING
                                                     else 1):
                raise ParseError(
                    f"pattern {name!r} needs the instance uniformity")
            return PatternFactory(kind).get_pattern(params, k or 0)
    if os.path.exists(name):
        from src.hypergraph_io import read_hypergraph
        return read_hypergraph(name)
    raise ParseError(f"unknown pattern {name!r}")
