import argparse

from src.cli.dependencies import get_classification_service, require_defining_graph
from src.cli.router import CommandRouter
from src.models.responses import ClassificationReport
from src.services.defining_graph_service import doubling_embedding, irreducible_factors
from src.services.document_service import LoadedInstance
from src.utils.helpers import TextFormatter

router = CommandRouter(tags=["defining-graph"])


@router.command("classify-nevo-sageev", help="Simplicity or structure verdict from the join decomposition")
def classify_nevo_sageev(instance: LoadedInstance, args: argparse.Namespace) -> ClassificationReport:
    graph = require_defining_graph(instance)
    return get_classification_service().classify_nevo_sageev(graph, instance.defining_kind, instance.instance)


@router.command("classify-visual", help="Verdict for the action on the visual boundary")
def classify_visual(instance: LoadedInstance, args: argparse.Namespace) -> ClassificationReport:
    graph = require_defining_graph(instance)
    return get_classification_service().classify_visual(graph, instance.defining_kind, instance.instance)


@router.command("factors", help="Irreducible join factors with their tags")
def factors(instance: LoadedInstance, args: argparse.Namespace) -> ClassificationReport:
    graph = require_defining_graph(instance)
    decomposition = irreducible_factors(graph, instance.defining_kind)
    results = [
        f"{TextFormatter.vertex_set(f.graph.vertices)}: {f.tag.value}" for f in decomposition.factors
    ]
    results.append(f"n = {decomposition.euclidean_count}")
    results.append(f"Γ′ = {TextFormatter.vertex_set(decomposition.residual.vertices)}")
    return ClassificationReport(instance=instance.instance, command="factors", results=results)


@router.command("doubling", help="Doubled defining graph on V × {0,1}")
def doubling(instance: LoadedInstance, args: argparse.Namespace) -> ClassificationReport:
    graph = require_defining_graph(instance)
    doubled = doubling_embedding(graph)
    results = [f"vertices: {' '.join(doubled.vertices)}"]
    results.extend(f"{u} -- {v}" for u, v in doubled.edge_list())
    return ClassificationReport(instance=instance.instance, command="doubling", results=results)
