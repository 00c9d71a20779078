"""Join structure of right-angled defining graphs and the two-point Euclidean boundary models."""

import logging
from itertools import combinations
from typing import Optional, Sequence

import networkx as nx

from src.core.exceptions import DoublingJoinFoundError, NotEuclideanError, NotIrreducibleError
from src.models.defining import EuclideanBoundaryModel, Factor, FactorDecomposition, FactorTag
from src.models.graphs import DefiningGraph, DefiningKind

logger = logging.getLogger(__name__)

SWAP = (1, 0)
FIX = (0, 1)


def _tag(factor: DefiningGraph, kind: DefiningKind) -> FactorTag:
    size = len(factor.vertices)
    if kind == DefiningKind.RACG:
        if size == 1:
            return FactorTag.Z2
        if size == 2 and not factor.edges:
            return FactorTag.EUCLIDEAN_DINF
        return FactorTag.NON_EUCLIDEAN
    if size == 1:
        return FactorTag.EUCLIDEAN_Z
    return FactorTag.NON_EUCLIDEAN


def irreducible_factors(
    graph: DefiningGraph, kind: DefiningKind = DefiningKind.RACG
) -> FactorDecomposition:
    """Factors are the connected components of the complement, listed by first vertex."""
    components = nx.connected_components(graph.complement())
    ordered = sorted(components, key=lambda c: min(graph.order_key(v) for v in c))
    factors = []
    for component in ordered:
        induced = graph.induced(component)
        factors.append(Factor(graph=induced, tag=_tag(induced, kind)))
    residual = graph.induced(
        v for f in factors if f.tag == FactorTag.NON_EUCLIDEAN for v in f.graph.vertices
    )
    logger.debug(f"{len(factors)} irreducible factors: {[f.tag.value for f in factors]}")
    return FactorDecomposition(graph=graph, kind=kind, factors=tuple(factors), residual=residual)


def is_join(graph: DefiningGraph) -> bool:
    return len(graph.vertices) >= 2 and not nx.is_connected(graph.complement())


def join(parts: Sequence[DefiningGraph]) -> DefiningGraph:
    vertices = tuple(v for part in parts for v in part.vertices)
    edges = set().union(*(part.edges for part in parts)) if parts else set()
    for left, right in combinations(parts, 2):
        edges.update(frozenset((u, v)) for u in left.vertices for v in right.vertices)
    return DefiningGraph(vertices=vertices, edges=frozenset(edges))


def is_essential(graph: DefiningGraph, kind: DefiningKind) -> bool:
    """RACG: no vertex adjacent to all others. RAAG: always."""
    if kind == DefiningKind.RAAG:
        return True
    complement = graph.complement()
    return not any(complement.degree(v) == 0 for v in graph.vertices)


def doubled_vertex(vertex: str, layer: int) -> str:
    return f"({vertex},{layer})"


def doubling_embedding(graph: DefiningGraph) -> DefiningGraph:
    """Γ on V × {0,1}: layer 1 copies Γ, layer 0 is complete, (v,0)~(w,1) iff v ≠ w."""
    if len(graph.vertices) < 2 or is_join(graph):
        raise NotIrreducibleError(
            "Doubling needs a join-free defining graph with at least two vertices"
        )
    vertices = tuple(doubled_vertex(v, i) for v in graph.vertices for i in (0, 1))
    edges: set[frozenset[str]] = set()
    for v, w in combinations(graph.vertices, 2):
        edges.add(frozenset((doubled_vertex(v, 0), doubled_vertex(w, 0))))
        edges.add(frozenset((doubled_vertex(v, 0), doubled_vertex(w, 1))))
        edges.add(frozenset((doubled_vertex(w, 0), doubled_vertex(v, 1))))
        if graph.has_edge(v, w):
            edges.add(frozenset((doubled_vertex(v, 1), doubled_vertex(w, 1))))
    doubled = DefiningGraph(vertices=vertices, edges=frozenset(edges))
    if is_join(doubled):
        raise DoublingJoinFoundError("Doubled graph splits as a join", locus="doubling")
    return doubled


def euclidean_action(
    tag: FactorTag, generators: Optional[Sequence[str]] = None
) -> EuclideanBoundaryModel:
    if tag == FactorTag.EUCLIDEAN_DINF:
        names = tuple(generators) if generators else ("u", "v")
        return EuclideanBoundaryModel(tag=tag, generators=tuple((n, SWAP) for n in names))
    if tag == FactorTag.EUCLIDEAN_Z:
        names = tuple(generators) if generators else ("z",)
        return EuclideanBoundaryModel(tag=tag, generators=tuple((n, FIX) for n in names))
    raise NotEuclideanError(tag.value)
