from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Optional

import networkx as nx

from src.models.boundary import BoundaryPoint, Cylinder, CylinderUnion
from src.models.words import Path, ReducedWord


@dataclass(frozen=True)
class TurnGraph:
    """Automaton on directed edges; e -> f iff f may follow e in a reduced word.

    ``weights[(e, f)]`` counts the admissible tokens for f after e.
    """

    states: tuple[str, ...]
    weights: dict[tuple[str, str], int] = field(hash=False)

    @property
    def transitions(self) -> frozenset[tuple[str, str]]:
        return frozenset(self.weights)

    def successors(self, state: str) -> tuple[str, ...]:
        return tuple(f for f in self.states if (state, f) in self.weights)

    def out_weight(self, state: str) -> int:
        return sum(w for (e, _), w in self.weights.items() if e == state)

    def to_digraph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.states)
        for e in self.states:
            for f in self.successors(e):
                graph.add_edge(e, f, weight=self.weights[(e, f)])
        return graph


@dataclass(frozen=True)
class RepeatablePath:
    base: str
    letters: Path
    flagged: bool

    @property
    def last_edge(self) -> str:
        return self.letters[-1].edge


@dataclass(frozen=True)
class MinimalityVerdict:
    minimal: bool
    can_flow_to: dict[str, tuple[str, ...]] = field(hash=False)
    offending_edge: Optional[str] = None
    trapped_cycle: tuple[str, ...] = ()
    witness: Optional[BoundaryPoint] = None


@dataclass(frozen=True)
class BoundaryCardinality:
    infinite: bool
    base: str
    branching_state: Optional[str] = None
    cycle: tuple[str, ...] = ()


@dataclass(frozen=True)
class CycleValue:
    loop: ReducedWord
    q: Fraction


@dataclass(frozen=True)
class UnimodularityVerdict:
    unimodular: bool
    cycles: tuple[CycleValue, ...]

    @property
    def offending(self) -> Optional[CycleValue]:
        return next((c for c in self.cycles if abs(c.q) != 1), None)


@dataclass(frozen=True)
class FillingWitness:
    targets: tuple[Cylinder, Cylinder]
    mu: RepeatablePath
    power: int
    gammas: tuple[ReducedWord, ReducedWord]
    t: Hashable
    elements: tuple[ReducedWord, ReducedWord]
    part_a: CylinderUnion
    part_b: CylinderUnion
    candidates_examined: int


@dataclass(frozen=True)
class SubequivalenceWitness:
    source: CylinderUnion
    target: CylinderUnion
    pieces: tuple[tuple[Cylinder, ReducedWord], ...]


@dataclass(frozen=True)
class ParadoxicalWitness:
    source: CylinderUnion
    target: CylinderUnion
    first: SubequivalenceWitness
    second: SubequivalenceWitness


@dataclass(frozen=True)
class SubequivalenceCheck:
    valid: bool
    failure: Optional[str] = None
    locus: Optional[Cylinder] = None


@dataclass(frozen=True)
class NorthSouthVerdict:
    verified: bool
    power: Optional[int]
    attracting: Cylinder
    repelling: Cylinder
    attracting_point: BoundaryPoint
    repelling_point: Optional[BoundaryPoint]
