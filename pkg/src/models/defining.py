from dataclasses import dataclass
from src.core.compat import StrEnum

from src.models.graphs import DefiningGraph, DefiningKind

BOUNDARY_POINTS = ("0̆", "1̆")


class FactorTag(StrEnum):
    EUCLIDEAN_DINF = "euclidean-dinf"
    EUCLIDEAN_Z = "euclidean-z"
    Z2 = "z2-factor"
    NON_EUCLIDEAN = "non-euclidean"

    @property
    def euclidean(self) -> bool:
        return self in (FactorTag.EUCLIDEAN_DINF, FactorTag.EUCLIDEAN_Z)


@dataclass(frozen=True)
class Factor:
    graph: DefiningGraph
    tag: FactorTag


@dataclass(frozen=True)
class FactorDecomposition:
    graph: DefiningGraph
    kind: DefiningKind
    factors: tuple[Factor, ...]
    residual: DefiningGraph

    @property
    def euclidean_count(self) -> int:
        return sum(1 for factor in self.factors if factor.tag.euclidean)

    @property
    def non_euclidean(self) -> tuple[Factor, ...]:
        return tuple(f for f in self.factors if f.tag == FactorTag.NON_EUCLIDEAN)


@dataclass(frozen=True)
class EuclideanBoundaryModel:
    """Action of a Euclidean factor on the two-point boundary {0̆, 1̆}.

    Each generator is a permutation of ``(0, 1)``, indices into ``points``.
    """

    tag: FactorTag
    generators: tuple[tuple[str, tuple[int, int]], ...]
    points: tuple[str, str] = BOUNDARY_POINTS

    def permutation(self, word: tuple[str, ...]) -> tuple[int, int]:
        table = dict(self.generators)
        result = (0, 1)
        for name in reversed(word):
            step = table[name]
            result = (step[result[0]], step[result[1]])
        return result

    def orbits(self) -> list[tuple[str, ...]]:
        # two points: one orbit iff some generator swaps them
        if any(perm == (1, 0) for _, perm in self.generators):
            return [self.points]
        return [(self.points[0],), (self.points[1],)]
