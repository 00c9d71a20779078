from src.backends.base import CosetBackend
from src.models.graphs import GroupKind, OrientedGraph

TRIVIAL = 0


class TrivialEdgeBackend(CosetBackend):
    """Finite cyclic vertex groups Z/n with trivial edge groups (free products).

    Σ_e is the whole vertex group at r(e) and nothing is ever carried.
    """

    kind = GroupKind.TRIVIAL_EDGE

    def __init__(self, graph: OrientedGraph, orders: dict[str, int]):
        super().__init__(graph)
        self.orders = dict(orders)

    def identity(self, vertex: str) -> int:
        return 0

    def compose(self, vertex: str, a: int, b: int) -> int:
        return (a + b) % self.orders[vertex]

    def invert(self, vertex: str, a: int) -> int:
        return (-a) % self.orders[vertex]

    def contains(self, vertex: str, a) -> bool:
        return isinstance(a, int) and 0 <= a < self.orders[vertex]

    def transversal(self, edge: str) -> tuple[int, ...]:
        return tuple(range(self.orders[self.graph.range_of(edge)]))

    def split(self, edge: str, g: int) -> tuple[int, int]:
        self._require(self.graph.range_of(edge), g, edge)
        return g, TRIVIAL

    def embed(self, edge: str, h: int) -> int:
        return 0

    def parse_token(self, vertex: str, text: str) -> int:
        token = int(text)
        if not self.contains(vertex, token):
            raise ValueError(f"{token} is not in Z/{self.orders[vertex]} at {vertex}")
        return token
