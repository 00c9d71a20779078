"""Turn-graph decisions on graphs of groups: repeatable paths, flow, infiniteness, unimodularity."""

import logging
from typing import Optional

import networkx as nx

from src.core.config import settings
from src.core.exceptions import HypothesisFailedError, NotGBSError
from src.models.dynamics import (
    BoundaryCardinality,
    CycleValue,
    MinimalityVerdict,
    RepeatablePath,
    TurnGraph,
    UnimodularityVerdict,
)
from src.models.graphs import GraphOfGroups, GroupKind
from src.models.words import GWord, Letter, Path
from src.services.boundary_service import (
    enumerate_level,
    path_key,
    periodic_point,
    require_non_singular,
)
from src.services.normal_form_service import (
    invert,
    is_reduced_path,
    modular_value,
    multiply,
    path_word,
)

logger = logging.getLogger(__name__)


def build_turn_graph(g: GraphOfGroups) -> TurnGraph:
    require_non_singular(g)
    graph = g.graph
    states = tuple(edge.name for edge in graph.edges)
    weights: dict[tuple[str, str], int] = {}
    for e in graph.edges:
        for f in graph.incoming(e.source):
            size = g.index(f.name)
            if f.name == e.partner:
                size -= 1
            if size > 0:
                weights[(e.name, f.name)] = size
    logger.debug(f"Turn graph: {len(states)} states, {len(weights)} transitions")
    return TurnGraph(states=states, weights=weights)


def level_sizes(g: GraphOfGroups, base: str, depth: int) -> list[int]:
    """Number of reduced paths of each length 0..depth from ``base``, by counting over the turn graph."""
    turns = build_turn_graph(g)
    counts = {edge.name: g.index(edge.name) for edge in g.graph.incoming(base)}
    sizes = [1]
    for _ in range(depth):
        sizes.append(sum(counts.values()))
        following: dict[str, int] = {}
        for (e, f), weight in turns.weights.items():
            if e in counts:
                following[f] = following.get(f, 0) + counts[e] * weight
        counts = following
    return sizes[: depth + 1]


def _token_after(g: GraphOfGroups, previous: str, edge: str):
    """Identity, or the first nonidentity transversal token right after a reversal."""
    transversal = g.transversal(edge)
    if g.graph.partner(previous) == edge:
        return transversal[1]
    return transversal[0]


def _cycle_letters(g: GraphOfGroups, states: list[str]) -> Path:
    return tuple(
        Letter(_token_after(g, states[i - 1], state), state) for i, state in enumerate(states)
    )


def boundary_infinite(g: GraphOfGroups, base: str) -> BoundaryCardinality:
    turns = build_turn_graph(g)
    digraph = turns.to_digraph()
    reachable: set[str] = set()
    for edge in g.graph.incoming(base):
        reachable.add(edge.name)
        reachable |= nx.descendants(digraph, edge.name)
    for component in nx.strongly_connected_components(digraph.subgraph(reachable)):
        looped = len(component) > 1 or any(digraph.has_edge(s, s) for s in component)
        if not looped:
            continue
        for state in turns.states:
            if state in component and turns.out_weight(state) >= 2:
                cycle = _shortest_cycle(digraph.subgraph(component), state)
                logger.info(f"Boundary at {base} branches at {state}")
                return BoundaryCardinality(True, base, branching_state=state, cycle=tuple(cycle))
    return BoundaryCardinality(False, base)


def _shortest_cycle(digraph: nx.DiGraph, state: str) -> list[str]:
    """Shortest closed transition path through ``state``, ending at ``state``."""
    if digraph.has_edge(state, state):
        return [state]
    best: Optional[list[str]] = None
    for successor in digraph.successors(state):
        try:
            route = nx.shortest_path(digraph, successor, state)
        except nx.NetworkXNoPath:
            continue
        if best is None or len(route) < len(best):
            best = route
    if best is None:
        raise ValueError(f"{state} lies on no cycle")
    return best


def can_flow_to(turns: TurnGraph, digraph: nx.DiGraph, edge: str) -> tuple[str, ...]:
    """States reachable from ``edge`` in at least one step, in state order."""
    reach: set[str] = set()
    for successor in digraph.successors(edge):
        reach.add(successor)
        reach |= nx.descendants(digraph, successor)
    return tuple(s for s in turns.states if s in reach)


def check_minimality(g: GraphOfGroups) -> MinimalityVerdict:
    turns = build_turn_graph(g)
    digraph = turns.to_digraph()
    flows = {e: can_flow_to(turns, digraph, e) for e in turns.states}
    for e in turns.states:
        avoided = [s for s in turns.states if s not in flows[e]]
        try:
            trapped = nx.find_cycle(digraph.subgraph(avoided))
        except nx.NetworkXNoCycle:
            continue
        states = [u for u, _ in trapped]
        letters = _cycle_letters(g, states)
        witness = periodic_point(g, g.graph.range_of(states[0]), letters)
        logger.info(f"Not minimal: cycle {states} avoids everything reachable from {e}")
        return MinimalityVerdict(
            minimal=False,
            can_flow_to=flows,
            offending_edge=e,
            trapped_cycle=tuple(states),
            witness=witness,
        )
    return MinimalityVerdict(minimal=True, can_flow_to=flows)


def is_repeatable(g: GraphOfGroups, path: Path) -> bool:
    if not path:
        return False
    graph = g.graph
    base = graph.range_of(path[0].edge)
    if graph.source(path[-1].edge) != base:
        return False
    return is_reduced_path(g, base, path + path)


def find_repeatable(
    g: GraphOfGroups, max_len: int, base: Optional[str] = None
) -> list[RepeatablePath]:
    require_non_singular(g)
    bases = [base] if base is not None else list(g.graph.vertices)
    found: list[RepeatablePath] = []
    for vertex in bases:
        for length in range(1, max_len + 1):
            for path in enumerate_level(g, vertex, length).paths:
                if is_repeatable(g, path):
                    flagged = g.index(g.graph.partner(path[-1].edge)) >= 2
                    found.append(RepeatablePath(base=vertex, letters=path, flagged=flagged))
    found.sort(key=lambda mu: path_key(g, mu.letters))
    logger.debug(f"{len(found)} repeatable paths up to length {max_len}")
    return found


def find_flagged_repeatable(
    g: GraphOfGroups, base: Optional[str] = None, max_len: Optional[int] = None
) -> Optional[RepeatablePath]:
    """Least flagged repeatable path; without a base falls back to a cycle through a flagged state."""
    limit = max_len if max_len is not None else settings.repeatable_max_len
    flagged = [mu for mu in find_repeatable(g, limit, base) if mu.flagged]
    if flagged:
        return flagged[0]
    if base is not None:
        return None
    turns = build_turn_graph(g)
    digraph = turns.to_digraph()
    for state in turns.states:
        if g.index(g.graph.partner(state)) < 2:
            continue
        try:
            cycle = _shortest_cycle(digraph, state)
        except ValueError:
            continue
        letters = _cycle_letters(g, cycle)
        return RepeatablePath(base=g.graph.range_of(cycle[0]), letters=letters, flagged=True)
    return None


def _tree_paths(g: GraphOfGroups) -> tuple[dict[str, Path], dict[str, str], set[str]]:
    """Spanning-forest paths from each component root, the roots, and the geometric edges used."""
    graph = g.graph
    simple = nx.Graph(graph.to_multigraph())
    paths: dict[str, Path] = {}
    roots: dict[str, str] = {}
    used: set[str] = set()
    for root in graph.vertices:
        if root in paths:
            continue
        paths[root] = ()
        roots[root] = root
        for parent, child in nx.bfs_edges(simple, root):
            step = next(
                e for e in graph.edges if e.range == parent and e.source == child
            )
            used.add(step.geometric)
            paths[child] = paths[parent] + (Letter(g.backend.identity(parent), step.name),)
            roots[child] = root
    return paths, roots, used


def check_unimodular(g: GraphOfGroups) -> UnimodularityVerdict:
    """q on the fundamental cycles of a spanning tree; unimodular iff every |q| = 1."""
    if g.kind != GroupKind.GBS:
        raise NotGBSError("check_unimodular")
    graph = g.graph
    paths, roots, used = _tree_paths(g)
    cycles: list[CycleValue] = []
    for edge in graph.geometric_edges:
        if edge.name in used:
            continue
        root = roots[edge.range]
        to_range = path_word(g, root, paths[edge.range])
        step = GWord(
            range=edge.range,
            source=edge.source,
            letters=(Letter(g.backend.identity(edge.range), edge.name),),
            tail=g.backend.identity(edge.source),
        )
        back = invert(g, path_word(g, root, paths[edge.source]))
        loop = multiply(g, multiply(g, to_range, step), back)
        cycles.append(CycleValue(loop=loop, q=modular_value(g, loop)))
    unimodular = all(abs(c.q) == 1 for c in cycles)
    logger.info(f"{len(cycles)} basis cycles, unimodular={unimodular}")
    return UnimodularityVerdict(unimodular=unimodular, cycles=tuple(cycles))


def as_repeatable(g: GraphOfGroups, path: Path) -> RepeatablePath:
    """Wrap a user-given path, refusing anything that is not repeatable."""
    if not is_repeatable(g, path):
        raise HypothesisFailedError("repeatable-path", "path is not a repeatable loop")
    flagged = g.index(g.graph.partner(path[-1].edge)) >= 2
    return RepeatablePath(base=g.graph.range_of(path[0].edge), letters=path, flagged=flagged)
