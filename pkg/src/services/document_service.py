import json
import logging
from dataclasses import dataclass
from typing import Optional, Union

from pydantic import TypeAdapter, ValidationError

from src.backends import FiniteGroup
from src.core.exceptions import ResolveError, SchemaError
from src.models.graphs import DefiningGraph, DefiningKind, GraphOfGroups, GroupKind
from src.models.requests import DefiningGraphDocument, GraphOfGroupsDocument, InputDocument
from src.services.graph_service import (
    build_defining_graph,
    build_graph_of_groups,
    build_oriented_graph,
    geometric_to_directed,
)

logger = logging.getLogger(__name__)

_adapter: TypeAdapter = TypeAdapter(InputDocument)


@dataclass(frozen=True)
class LoadedInstance:
    """A validated document together with the structure it describes."""

    document: Union[DefiningGraphDocument, GraphOfGroupsDocument]
    instance: str
    base: str
    graph_of_groups: Optional[GraphOfGroups] = None
    defining_graph: Optional[DefiningGraph] = None

    @property
    def defining_kind(self) -> DefiningKind:
        return self.document.group if isinstance(self.document, DefiningGraphDocument) else DefiningKind.RACG


def _locus(error: dict) -> str:
    return ".".join(str(part) for part in error["loc"]) or "document"


def validate_document(text: str) -> Union[DefiningGraphDocument, GraphOfGroupsDocument]:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"Invalid JSON: {e.msg}", locus=f"line {e.lineno}, column {e.colno}")
    try:
        return _adapter.validate_python(payload)
    except ValidationError as e:
        first = e.errors()[0]
        raise SchemaError(first["msg"], locus=_locus(first))


def _graph_of_groups(doc: GraphOfGroupsDocument) -> GraphOfGroups:
    directed = geometric_to_directed((e.id, e.source, e.to, e.rev_id) for e in doc.edges)
    graph = build_oriented_graph(doc.vertices, directed)
    kind = doc.group_kind
    if kind == GroupKind.GBS:
        indices: dict[str, int] = {}
        for edge in doc.edges:
            indices[edge.id] = edge.k
            indices[graph.partner(edge.id)] = edge.k_rev
        return build_graph_of_groups(graph, kind, indices=indices)
    if kind == GroupKind.TRIVIAL_EDGE:
        orders = doc.vertex_orders or {}
        for vertex in orders:
            if vertex not in doc.vertices:
                raise ResolveError(f"vertex_orders names undeclared vertex {vertex}", locus=f"vertex_orders.{vertex}")
        return build_graph_of_groups(graph, kind, orders=orders)

    vertex_groups = {}
    for vertex, table in (doc.vertex_groups or {}).items():
        if vertex not in doc.vertices:
            raise ResolveError(f"vertex_groups names undeclared vertex {vertex}", locus=f"vertex_groups.{vertex}")
        vertex_groups[vertex] = FiniteGroup.from_rows(table.elements, table.table, f"vertex_groups.{vertex}")
    edge_groups = {}
    monomorphisms = {}
    for i, edge in enumerate(doc.edges):
        edge_groups[edge.id] = FiniteGroup.from_rows(edge.group.elements, edge.group.table, f"edges.{i}.group")
        monomorphisms[edge.id] = edge.alpha
        monomorphisms[graph.partner(edge.id)] = edge.alpha_rev
    return build_graph_of_groups(
        graph,
        kind,
        vertex_groups=vertex_groups,
        edge_groups=edge_groups,
        monomorphisms=monomorphisms,
    )


def parse_input(text: str, base: Optional[str] = None) -> LoadedInstance:
    """Validate a JSON document and build its graph; ``base`` overrides the document's base vertex."""
    doc = validate_document(text)
    chosen = base or doc.base or doc.vertices[0]
    if chosen not in doc.vertices:
        raise ResolveError(f"Base vertex {chosen} is not declared", locus="base")
    instance = doc.id or doc.kind
    if isinstance(doc, DefiningGraphDocument):
        graph = build_defining_graph(doc.vertices, doc.edges)
        logger.debug(f"Loaded defining graph {instance}")
        return LoadedInstance(document=doc, instance=instance, base=chosen, defining_graph=graph)
    g = _graph_of_groups(doc)
    logger.debug(f"Loaded {g.kind.value} graph of groups {instance} at base {chosen}")
    return LoadedInstance(document=doc, instance=instance, base=chosen, graph_of_groups=g)
