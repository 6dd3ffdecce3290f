from typing import Dict, List, Mapping, Sequence, Tuple

from src.errors import InvalidHypergraphError, ParseError
from src.hypergraph import Edge, Hypergraph
from src.partition import PartitionedHypergraph


def _content_lines(text: str) -> List[Tuple[int, str]]:
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith('#'):
            lines.append((number, line))
    return lines


def _ints(fields: Sequence[str], number: int) -> List[int]:
    try:
        return [int(f) for f in fields]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(fields)!r}",
                         number)


def parse_hypergraph(text: str) -> Hypergraph:
    """
    Parse the hypergraph text format.

    The first content line is ``k n``; every further line is
    ``e v1 ... vk``. Lines starting with ``#`` are comments.

    Parameters
    ----------
    text: str

    Returns
    -------
    Hypergraph
    """
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty hypergraph file")
    number, header = lines[0]
    fields = header.split()
    if len(fields) != 2:
        raise ParseError(f"header must be 'k n', got {header!r}", number)
    k, n = _ints(fields, number)
    edges = []
    for number, line in lines[1:]:
        fields = line.split()
        if fields[0] != 'e':
            raise ParseError(f"expected an edge line, got {line!r}", number)
        edge = _ints(fields[1:], number)
        if len(edge) != k:
            raise ParseError(f"edge has {len(edge)} vertices, expected {k}",
                             number)
        if edge != sorted(edge):
            raise ParseError("edge vertices must be ascending", number)
        edges.append(tuple(edge))
    try:
        return Hypergraph(k, n, edges)
    except InvalidHypergraphError as error:
        raise ParseError(str(error))


def format_hypergraph(graph: Hypergraph) -> str:
    lines = [f"{graph.k} {graph.n}"]
    lines.extend('e ' + ' '.join(map(str, edge)) for edge in graph.edges)
    return '\n'.join(lines) + '\n'


def read_hypergraph(path: str) -> Hypergraph:
    with open(path) as handle:
        return parse_hypergraph(handle.read())


def write_hypergraph(graph: Hypergraph, path: str) -> None:
    with open(path, 'w') as handle:
        handle.write(format_hypergraph(graph))


def parse_partition(text: str, base: Hypergraph,
                    pattern: Hypergraph) -> PartitionedHypergraph:
    """
    Parse a partition sidecar: one ``part <i>: v1 v2 ...`` line per part.

    Parameters
    ----------
    text: str
    base: Hypergraph
        Instance the partition belongs to.
    pattern: Hypergraph
        Pattern indexing the parts.

    Returns
    -------
    PartitionedHypergraph
    """
    parts: Dict[int, int] = {}
    for number, line in _content_lines(text):
        head, sep, body = line.partition(':')
        fields = head.split()
        if not sep or len(fields) != 2 or fields[0] != 'part':
            raise ParseError(f"expected 'part <i>: ...', got {line!r}",
                             number)
        role = _ints(fields[1:], number)[0]
        for v in _ints(body.split(), number):
            if v in parts:
                raise ParseError(f"vertex {v} listed twice", number)
            parts[v] = role
    missing = [v for v in range(base.n) if v not in parts]
    if missing:
        raise ParseError(f"vertices without a part: {missing}")
    extra = [v for v in parts if not 0 <= v < base.n]
    if extra:
        raise ParseError(f"unknown vertices in partition: {sorted(extra)}")
    try:
        return PartitionedHypergraph(base, pattern,
                                     tuple(parts[v] for v in range(base.n)))
    except InvalidHypergraphError as error:
        raise ParseError(str(error))


def format_partition(partitioned: PartitionedHypergraph) -> str:
    lines = []
    for role, members in partitioned.as_dict().items():
        lines.append(f"part {role}: " + ' '.join(map(str, members)))
    return '\n'.join(lines) + '\n'


def read_partition(path: str, base: Hypergraph,
                   pattern: Hypergraph) -> PartitionedHypergraph:
    with open(path) as handle:
        return parse_partition(handle.read(), base, pattern)


def write_partition(partitioned: PartitionedHypergraph, path: str) -> None:
    with open(path, 'w') as handle:
        handle.write(format_partition(partitioned))


def _edge_text(edge: Edge) -> str:
    return ' '.join(map(str, edge))


def format_metadata(fields: Mapping[str, object],
                    back_map: Sequence[Tuple[Edge, Edge]] = ()) -> str:
    """
    Metadata sidecar: ``key = value`` lines followed by one
    ``map <output edge> -> <input edge>`` line per back-map entry.
    """
    lines = [f"{key} = {value}" for key, value in fields.items()]
    lines.extend(f"map {_edge_text(out)} -> {_edge_text(back)}"
                 for out, back in back_map)
    return '\n'.join(lines) + '\n'


def parse_metadata(text: str
                   ) -> Tuple[Dict[str, str], List[Tuple[Edge, Edge]]]:
    fields: Dict[str, str] = {}
    back_map: List[Tuple[Edge, Edge]] = []
    for number, line in _content_lines(text):
        if line.startswith('map '):
            out, arrow, back = line[4:].partition('->')
            if not arrow:
                raise ParseError(f"map line without '->': {line!r}", number)
            back_map.append((tuple(_ints(out.split(), number)),
                             tuple(_ints(back.split(), number))))
            continue
        key, sep, value = line.partition('=')
        if not sep:
            raise ParseError(f"expected 'key = value', got {line!r}", number)
        fields[key.strip()] = value.strip()
    return fields, back_map


def write_metadata(path: str, fields: Mapping[str, object],
                   back_map: Sequence[Tuple[Edge, Edge]] = ()) -> None:
    with open(path, 'w') as handle:
        handle.write(format_metadata(fields, back_map))


def read_metadata(path: str
                  ) -> Tuple[Dict[str, str], List[Tuple[Edge, Edge]]]:
    with open(path) as handle:
        return parse_metadata(handle.read())
