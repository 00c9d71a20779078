from src.backends.base import CosetBackend
from src.models.graphs import GroupKind, OrientedGraph


class GBSBackend(CosetBackend):
    """Every vertex and edge group is Z; α_e is multiplication by the signed index k_e.

    Tokens are Python ints, so carries k_ē·h never overflow.
    """

    kind = GroupKind.GBS

    def __init__(self, graph: OrientedGraph, indices: dict[str, int]):
        super().__init__(graph)
        self.indices = dict(indices)

    def k(self, edge: str) -> int:
        return self.indices[edge]

    def identity(self, vertex: str) -> int:
        return 0

    def compose(self, vertex: str, a: int, b: int) -> int:
        return a + b

    def invert(self, vertex: str, a: int) -> int:
        return -a

    def contains(self, vertex: str, a) -> bool:
        return isinstance(a, int) and not isinstance(a, bool)

    def transversal(self, edge: str) -> tuple[int, ...]:
        return tuple(range(abs(self.indices[edge])))

    def split(self, edge: str, g: int) -> tuple[int, int]:
        self._require(self.graph.range_of(edge), g, edge)
        k = self.indices[edge]
        s = g % abs(k)
        return s, (g - s) // k

    def embed(self, edge: str, h: int) -> int:
        return self.indices[edge] * h

    def parse_token(self, vertex: str, text: str) -> int:
        return int(text)
