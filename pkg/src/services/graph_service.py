import logging
import unicodedata
import warnings
from typing import Iterable, Optional, Sequence

import networkx as nx

from src.backends import (
    CosetBackend,
    FiniteGroup,
    FiniteTableBackend,
    GBSBackend,
    TrivialEdgeBackend,
)
from src.core.exceptions import (
    BrokenInvolutionError,
    DuplicateEdgeError,
    SchemaError,
    SelfLoopError,
    SingularGraphWarning,
    UnknownVertexError,
    ZeroIndexError,
)
from src.models.graphs import (
    DefiningGraph,
    DirectedEdge,
    GraphOfGroups,
    GroupKind,
    OrientedGraph,
)

logger = logging.getLogger(__name__)

MACRON = "̄"

# (name, source, range, partner)
EdgeEntry = tuple[str, str, str, str]


def reverse_name(edge_id: str) -> str:
    """Default name of the reverse edge: a macron over the first character (e -> ē)."""
    return unicodedata.normalize("NFC", edge_id[0] + MACRON + edge_id[1:])


def build_defining_graph(
    vertices: Sequence[str], edges: Iterable[tuple[str, str]]
) -> DefiningGraph:
    if len(set(vertices)) != len(vertices):
        duplicate = next(v for v in vertices if list(vertices).count(v) > 1)
        raise SchemaError(f"Vertex {duplicate} declared twice", locus=duplicate)
    declared = set(vertices)
    seen: set[frozenset[str]] = set()
    for u, v in edges:
        for endpoint in (u, v):
            if endpoint not in declared:
                raise UnknownVertexError(endpoint, where=f"edge {u}-{v}")
        if u == v:
            raise SelfLoopError(u)
        pair = frozenset((u, v))
        if pair in seen:
            raise DuplicateEdgeError(f"{u}-{v}")
        seen.add(pair)
    logger.debug(f"Defining graph with {len(vertices)} vertices and {len(seen)} edges")
    return DefiningGraph(vertices=tuple(vertices), edges=frozenset(seen))


def build_oriented_graph(
    vertices: Sequence[str], directed: Sequence[EdgeEntry]
) -> OrientedGraph:
    """Validate the involution and lay edges out as (forward, reverse) pairs."""
    declared = set(vertices)
    if len(declared) != len(vertices):
        raise SchemaError("Vertices must be distinct")
    by_name: dict[str, EdgeEntry] = {}
    for entry in directed:
        name, source, target, _ = entry
        if name in by_name:
            raise DuplicateEdgeError(name)
        for endpoint in (source, target):
            if endpoint not in declared:
                raise UnknownVertexError(endpoint, where=f"edge {name}")
        by_name[name] = entry

    ordered: list[DirectedEdge] = []
    placed: set[str] = set()
    for name, source, target, partner in directed:
        if name in placed:
            continue
        if partner == name:
            raise BrokenInvolutionError(name, "edge is its own reverse")
        if partner not in by_name:
            raise BrokenInvolutionError(name, f"reverse {partner} is not declared")
        _, p_source, p_target, p_partner = by_name[partner]
        if p_partner != name:
            raise BrokenInvolutionError(name, f"reverse of {partner} is {p_partner}")
        if (p_source, p_target) != (target, source):
            raise BrokenInvolutionError(name, "source and range do not swap under reversal")
        ordered.append(DirectedEdge(name, source, target, partner, geometric=name, forward=True))
        ordered.append(DirectedEdge(partner, target, source, name, geometric=name, forward=False))
        placed.update((name, partner))
    return OrientedGraph(vertices=tuple(vertices), edges=tuple(ordered))


def geometric_to_directed(edges: Iterable[tuple[str, str, str, Optional[str]]]) -> list[EdgeEntry]:
    """Expand (id, from, to, rev_id) declarations into both directed edges."""
    directed: list[EdgeEntry] = []
    for edge_id, source, target, rev_id in edges:
        reverse = rev_id or reverse_name(edge_id)
        directed.append((edge_id, source, target, reverse))
        directed.append((reverse, target, source, edge_id))
    return directed


def singular_edges(graph: OrientedGraph, backend: CosetBackend) -> tuple[str, ...]:
    """Edges e that are the only edge into r(e) while |Σ_e| = 1."""
    return tuple(
        edge.name
        for edge in graph.edges
        if len(graph.incoming(edge.range)) == 1 and backend.index(edge.name) <= 1
    )


def build_graph_of_groups(
    graph: OrientedGraph,
    kind: GroupKind,
    *,
    indices: Optional[dict[str, int]] = None,
    orders: Optional[dict[str, int]] = None,
    vertex_groups: Optional[dict[str, FiniteGroup]] = None,
    edge_groups: Optional[dict[str, FiniteGroup]] = None,
    monomorphisms: Optional[dict[str, dict[str, str]]] = None,
) -> GraphOfGroups:
    if kind == GroupKind.GBS:
        indices = indices or {}
        for edge in graph.edges:
            if edge.name not in indices:
                raise SchemaError(f"Missing index for edge {edge.name}", locus=edge.name)
            if indices[edge.name] == 0:
                raise ZeroIndexError(edge.name)
        backend: CosetBackend = GBSBackend(graph, indices)
    elif kind == GroupKind.TRIVIAL_EDGE:
        orders = orders or {}
        for vertex in graph.vertices:
            if orders.get(vertex, 0) < 1:
                raise SchemaError(f"Vertex {vertex} needs a positive group order", locus=vertex)
        backend = TrivialEdgeBackend(graph, orders)
    else:
        if vertex_groups is None or edge_groups is None or monomorphisms is None:
            raise SchemaError("finite-table graphs need vertex groups, edge groups and maps")
        missing = [v for v in graph.vertices if v not in vertex_groups]
        if missing:
            raise SchemaError(f"No group table for vertex {missing[0]}", locus=missing[0])
        backend = FiniteTableBackend(graph, vertex_groups, edge_groups, monomorphisms)

    singular = singular_edges(graph, backend)
    if singular:
        message = f"Graph of groups is singular at {', '.join(singular)}; dynamics checks will refuse it"
        logger.warning(message)
        warnings.warn(message, SingularGraphWarning, stacklevel=2)
    return GraphOfGroups(graph=graph, backend=backend, kind=kind, singular_edges=singular)


def build_gbs(
    vertices: Sequence[str],
    edges: Iterable[tuple[str, str, str, int, int]],
) -> GraphOfGroups:
    """GBS graph from (id, from, to, k, k_rev) rows; reverse names use the default macron."""
    rows = list(edges)
    graph = build_oriented_graph(vertices, geometric_to_directed((e, s, t, None) for e, s, t, _, _ in rows))
    indices: dict[str, int] = {}
    for edge_id, _, _, k, k_rev in rows:
        indices[edge_id] = k
        indices[reverse_name(edge_id)] = k_rev
    return build_graph_of_groups(graph, GroupKind.GBS, indices=indices)


def build_free_product(
    orders: dict[str, int],
    edges: Iterable[tuple[str, str, str]],
) -> GraphOfGroups:
    """Trivial-edge-group graph over cyclic vertex groups from (id, from, to) rows."""
    graph = build_oriented_graph(
        list(orders), geometric_to_directed((e, s, t, None) for e, s, t in edges)
    )
    return build_graph_of_groups(graph, GroupKind.TRIVIAL_EDGE, orders=orders)


def first_betti_number(graph: OrientedGraph) -> int:
    multigraph = graph.to_multigraph()
    components = nx.number_connected_components(multigraph) if graph.vertices else 0
    return len(graph.geometric_edges) - len(graph.vertices) + components
