from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from src.errors import InvalidHypergraphError
from src.hypergraph import Edge, Hypergraph, make_edge


@dataclass(frozen=True)
class PartitionedHypergraph:
    """
    A hypergraph together with an F-partition of its vertices.

    ``parts[v]`` is the pattern vertex whose part contains base vertex
    ``v``. Every base edge must be transversal and its set of part indices
    must be an edge of ``pattern``.
    """
    base: Hypergraph
    pattern: Hypergraph
    parts: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'parts', tuple(self.parts))
        if self.base.k != self.pattern.k:
            raise InvalidHypergraphError(
                f"base is {self.base.k}-uniform but pattern is "
                f"{self.pattern.k}-uniform")
        if len(self.parts) != self.base.n:
            raise InvalidHypergraphError(
                f"partition covers {len(self.parts)} of "
                f"{self.base.n} vertices")
        for v, part in enumerate(self.parts):
            if not 0 <= part < self.pattern.n:
                raise InvalidHypergraphError(
                    f"vertex {v} assigned to unknown part {part}")
        for edge in self.base.edges:
            roles = self.roles_of(edge)
            if len(set(roles)) != len(roles):
                raise InvalidHypergraphError(
                    f"edge {edge} hits a part twice")
            if make_edge(roles) not in self.pattern:
                raise InvalidHypergraphError(
                    f"edge {edge} spans parts {sorted(roles)}, "
                    f"which is not a pattern edge")

    def roles_of(self, edge: Edge) -> Tuple[int, ...]:
        return tuple(self.parts[v] for v in edge)

    def part(self, role: int) -> List[int]:
        return [v for v, p in enumerate(self.parts) if p == role]

    def part_sizes(self) -> List[int]:
        sizes = [0] * self.pattern.n
        for p in self.parts:
            sizes[p] += 1
        return sizes

    def edges_between(self, roles: Sequence[int]) -> List[Edge]:
        """Base edges whose part set is exactly ``roles``."""
        wanted = make_edge(roles)
        return [e for e in self.base.edges
                if make_edge(self.roles_of(e)) == wanted]

    def with_base(self, base: Hypergraph) -> 'PartitionedHypergraph':
        return PartitionedHypergraph(base, self.pattern, self.parts)

    def as_dict(self) -> Dict[int, List[int]]:
        return {role: self.part(role) for role in range(self.pattern.n)}
