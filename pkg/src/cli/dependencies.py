from src.core.exceptions import NotGBSError, SchemaError
from src.models.graphs import DefiningGraph, GraphOfGroups, GroupKind
from src.services.classification_service import classification_service
from src.services.document_service import LoadedInstance
from src.services.witness_service import witness_service


def get_classification_service():
    return classification_service


def get_witness_service():
    return witness_service


def require_graph_of_groups(instance: LoadedInstance) -> GraphOfGroups:
    if instance.graph_of_groups is None:
        raise SchemaError("Command needs a graph-of-groups document", locus="kind")
    return instance.graph_of_groups


def require_gbs(instance: LoadedInstance, operation: str) -> GraphOfGroups:
    g = require_graph_of_groups(instance)
    if g.kind != GroupKind.GBS:
        raise NotGBSError(operation)
    return g


def require_defining_graph(instance: LoadedInstance) -> DefiningGraph:
    if instance.defining_graph is None:
        raise SchemaError("Command needs a defining-graph document", locus="kind")
    return instance.defining_graph
