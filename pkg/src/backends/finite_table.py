import itertools
from functools import cached_property

from src.backends.base import CosetBackend
from src.core.exceptions import BackendRefusalError, SchemaError
from src.models.graphs import GroupKind, OrientedGraph


class FiniteGroup:
    """A finite group given by its multiplication table over named elements."""

    def __init__(self, elements: tuple[str, ...], table: dict[tuple[str, str], str]):
        self.elements = elements
        self.table = table
        self.identity = self._find_identity()
        self.inverses = {a: self._find_inverse(a) for a in elements}

    @classmethod
    def from_rows(cls, elements: list[str], rows: list[list[str]], locus: str) -> "FiniteGroup":
        if not elements or len(set(elements)) != len(elements):
            raise SchemaError("Group elements must be a non-empty list of distinct names", locus=locus)
        if len(rows) != len(elements) or any(len(row) != len(elements) for row in rows):
            raise SchemaError("Multiplication table must be square over the element list", locus=locus)
        known = set(elements)
        table: dict[tuple[str, str], str] = {}
        for a, row in zip(elements, rows):
            for b, product in zip(elements, row):
                if product not in known:
                    raise SchemaError(f"Table entry {a}*{b} = {product} is not an element", locus=locus)
                table[(a, b)] = product
        try:
            group = cls(tuple(elements), table)
        except ValueError as e:
            raise SchemaError(str(e), locus=locus)
        for a, b, c in itertools.product(elements, repeat=3):
            if table[(table[(a, b)], c)] != table[(a, table[(b, c)])]:
                raise SchemaError(f"Table is not associative at ({a}, {b}, {c})", locus=locus)
        return group

    def _find_identity(self) -> str:
        for candidate in self.elements:
            if all(self.table[(candidate, x)] == x == self.table[(x, candidate)] for x in self.elements):
                return candidate
        raise ValueError("Table has no identity element")

    def _find_inverse(self, a: str) -> str:
        for b in self.elements:
            if self.table[(a, b)] == self.identity == self.table[(b, a)]:
                return b
        raise ValueError(f"Element {a} has no inverse")

    def multiply(self, a: str, b: str) -> str:
        return self.table[(a, b)]

    @property
    def order(self) -> int:
        return len(self.elements)


class FiniteTableBackend(CosetBackend):
    """Finite vertex and edge groups given by tables, monomorphisms given as element maps.

    Σ_e holds one representative per left coset s·α_e(G_e): the identity first, then the
    first element of each remaining coset in declaration order.
    """

    kind = GroupKind.FINITE_TABLE

    def __init__(
        self,
        graph: OrientedGraph,
        vertex_groups: dict[str, FiniteGroup],
        edge_groups: dict[str, FiniteGroup],
        monomorphisms: dict[str, dict[str, str]],
    ):
        super().__init__(graph)
        self.vertex_groups = vertex_groups
        self.edge_groups = edge_groups
        self.monomorphisms = monomorphisms
        for edge in graph.edges:
            self._check_monomorphism(edge.name)

    def _edge_group(self, edge: str) -> FiniteGroup:
        return self.edge_groups[self.graph.edge(edge).geometric]

    def _check_monomorphism(self, edge: str) -> None:
        domain = self._edge_group(edge)
        target = self.vertex_groups[self.graph.range_of(edge)]
        alpha = self.monomorphisms.get(edge, {})
        locus = f"edges.{edge}"
        if set(alpha) != set(domain.elements):
            raise SchemaError("Monomorphism must be defined on every edge-group element", locus=locus)
        if any(value not in target.inverses for value in alpha.values()):
            raise SchemaError("Monomorphism maps outside the vertex group", locus=locus)
        if len(set(alpha.values())) != len(alpha):
            raise SchemaError("Monomorphism is not injective", locus=locus)
        for a, b in itertools.product(domain.elements, repeat=2):
            if alpha[domain.multiply(a, b)] != target.multiply(alpha[a], alpha[b]):
                raise SchemaError(f"Map is not a homomorphism at ({a}, {b})", locus=locus)

    @cached_property
    def _cosets(self) -> dict[str, tuple[tuple[str, ...], dict[str, tuple[str, str]]]]:
        result = {}
        for edge in self.graph.edges:
            group = self.vertex_groups[edge.range]
            alpha = self.monomorphisms[edge.name]
            ordered = (group.identity,) + tuple(x for x in group.elements if x != group.identity)
            representatives: list[str] = []
            splits: dict[str, tuple[str, str]] = {}
            for candidate in ordered:
                if candidate in splits:
                    continue
                representatives.append(candidate)
                for h, image in alpha.items():
                    splits[group.multiply(candidate, image)] = (candidate, h)
            result[edge.name] = (tuple(representatives), splits)
        return result

    def identity(self, vertex: str) -> str:
        return self.vertex_groups[vertex].identity

    def compose(self, vertex: str, a: str, b: str) -> str:
        return self.vertex_groups[vertex].multiply(a, b)

    def invert(self, vertex: str, a: str) -> str:
        return self.vertex_groups[vertex].inverses[a]

    def contains(self, vertex: str, a) -> bool:
        return a in self.vertex_groups[vertex].inverses

    def transversal(self, edge: str) -> tuple[str, ...]:
        return self._cosets[edge][0]

    def split(self, edge: str, g: str) -> tuple[str, str]:
        try:
            return self._cosets[edge][1][g]
        except KeyError:
            raise BackendRefusalError(f"Cannot split {g!r} against edge {edge}", locus=edge)

    def embed(self, edge: str, h: str) -> str:
        return self.monomorphisms[edge][h]

    def parse_token(self, vertex: str, text: str) -> str:
        if not self.contains(vertex, text):
            raise ValueError(f"'{text}' is not an element of the group at {vertex}")
        return text
