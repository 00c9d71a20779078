"""Graph data model: defining graphs, oriented graphs with edge involution, graphs of groups."""

from __future__ import annotations

from dataclasses import dataclass
from src.core.compat import StrEnum
from functools import cached_property
from typing import TYPE_CHECKING, Iterable

import networkx as nx

if TYPE_CHECKING:
    from src.backends.base import CosetBackend


class GroupKind(StrEnum):
    GBS = "gbs"
    TRIVIAL_EDGE = "trivial-edge-group"
    FINITE_TABLE = "finite-table"


class DefiningKind(StrEnum):
    RACG = "racg"
    RAAG = "raag"


@dataclass(frozen=True)
class DefiningGraph:
    """Finite simple graph. Vertex order is declaration order and drives every listing."""

    vertices: tuple[str, ...]
    edges: frozenset[frozenset[str]]

    @cached_property
    def _position(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    def has_edge(self, u: str, v: str) -> bool:
        return frozenset((u, v)) in self.edges

    def edge_list(self) -> list[tuple[str, str]]:
        pairs = [tuple(sorted(edge, key=self._position.__getitem__)) for edge in self.edges]
        return sorted(pairs, key=lambda p: (self._position[p[0]], self._position[p[1]]))

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self.edge_list())
        return graph

    def complement(self) -> nx.Graph:
        # nx.complement keeps node order of the input graph
        return nx.complement(self.to_networkx())

    def induced(self, subset: Iterable[str]) -> DefiningGraph:
        keep = set(subset)
        vertices = tuple(v for v in self.vertices if v in keep)
        edges = frozenset(edge for edge in self.edges if edge <= keep)
        return DefiningGraph(vertices=vertices, edges=edges)

    def order_key(self, vertex: str) -> int:
        return self._position[vertex]


@dataclass(frozen=True)
class DirectedEdge:
    name: str
    source: str
    range: str
    partner: str
    geometric: str
    forward: bool


@dataclass(frozen=True)
class OrientedGraph:
    """Directed graph with a fixed-point-free edge involution e -> ē.

    ``edges`` lists each geometric edge as its forward edge followed by its reverse,
    in declaration order; that is the canonical edge order.
    """

    vertices: tuple[str, ...]
    edges: tuple[DirectedEdge, ...]

    @cached_property
    def _by_name(self) -> dict[str, DirectedEdge]:
        return {edge.name: edge for edge in self.edges}

    @cached_property
    def _order(self) -> dict[str, int]:
        return {edge.name: i for i, edge in enumerate(self.edges)}

    @cached_property
    def _incoming(self) -> dict[str, tuple[DirectedEdge, ...]]:
        incoming: dict[str, list[DirectedEdge]] = {v: [] for v in self.vertices}
        for edge in self.edges:
            incoming[edge.range].append(edge)
        return {v: tuple(edges) for v, edges in incoming.items()}

    def has_edge(self, name: str) -> bool:
        return name in self._by_name

    def edge(self, name: str) -> DirectedEdge:
        return self._by_name[name]

    def partner(self, name: str) -> str:
        return self._by_name[name].partner

    def source(self, name: str) -> str:
        return self._by_name[name].source

    def range_of(self, name: str) -> str:
        return self._by_name[name].range

    def order(self, name: str) -> int:
        return self._order[name]

    def incoming(self, vertex: str) -> tuple[DirectedEdge, ...]:
        """Edges e with r(e) = vertex, canonical order."""
        return self._incoming[vertex]

    @property
    def geometric_edges(self) -> tuple[DirectedEdge, ...]:
        return tuple(edge for edge in self.edges if edge.forward)

    def to_multigraph(self) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        graph.add_nodes_from(self.vertices)
        for edge in self.geometric_edges:
            graph.add_edge(edge.source, edge.range, key=edge.name)
        return graph


@dataclass(frozen=True)
class GraphOfGroups:
    graph: OrientedGraph
    backend: "CosetBackend"
    kind: GroupKind
    singular_edges: tuple[str, ...] = ()

    @property
    def non_singular(self) -> bool:
        return not self.singular_edges

    @property
    def locally_finite(self) -> bool:
        return all(self.backend.index(edge.name) > 0 for edge in self.graph.edges)

    @property
    def default_base(self) -> str:
        return self.graph.vertices[0]

    def index(self, edge: str) -> int:
        return self.backend.index(edge)

    def transversal(self, edge: str) -> tuple:
        return self.backend.transversal(edge)

    @property
    def is_baumslag_solitar(self) -> bool:
        return (
            self.kind == GroupKind.GBS
            and len(self.graph.vertices) == 1
            and len(self.graph.geometric_edges) == 1
        )
