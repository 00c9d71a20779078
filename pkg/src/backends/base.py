"""Coset-rewriting backend contract shared by every graph-of-groups kind."""

from abc import ABC, abstractmethod
from functools import cached_property
from typing import Hashable

from src.core.exceptions import BackendRefusalError
from src.models.graphs import GroupKind, OrientedGraph

Token = Hashable


class CosetBackend(ABC):
    """Vertex-group arithmetic plus, per directed edge e, a transversal Σ_e and the split
    g = s·α_e(h). Tokens are opaque to callers; only the backend interprets them.
    """

    kind: GroupKind

    def __init__(self, graph: OrientedGraph):
        self.graph = graph

    @abstractmethod
    def identity(self, vertex: str) -> Token: ...

    @abstractmethod
    def compose(self, vertex: str, a: Token, b: Token) -> Token: ...

    @abstractmethod
    def invert(self, vertex: str, a: Token) -> Token: ...

    @abstractmethod
    def contains(self, vertex: str, a: Token) -> bool: ...

    @abstractmethod
    def transversal(self, edge: str) -> tuple[Token, ...]:
        """Σ_e with the identity token first."""

    @abstractmethod
    def split(self, edge: str, g: Token) -> tuple[Token, Token]:
        """Return (s, h) with s in Σ_e and g = s·α_e(h)."""

    @abstractmethod
    def embed(self, edge: str, h: Token) -> Token:
        """α_e(h) as a token of the vertex group at r(e)."""

    @abstractmethod
    def parse_token(self, vertex: str, text: str) -> Token: ...

    def format_token(self, vertex: str, token: Token) -> str:
        return str(token)

    def is_identity(self, vertex: str, a: Token) -> bool:
        return a == self.identity(vertex)

    def index(self, edge: str) -> int:
        return len(self.transversal(edge))

    def carry(self, edge: str, h: Token) -> Token:
        """α_ē(h): what R2 moves past e, landing in the group at s(e)."""
        return self.embed(self.graph.partner(edge), h)

    def recombine(self, edge: str, s: Token, h: Token) -> Token:
        return self.compose(self.graph.range_of(edge), s, self.embed(edge, h))

    def rank(self, edge: str, token: Token) -> int:
        try:
            return self._ranks[edge][token]
        except KeyError:
            raise BackendRefusalError(
                f"Token {token!r} is not a transversal token of edge {edge}", locus=edge
            )

    def in_transversal(self, edge: str, token: Token) -> bool:
        return token in self._ranks[edge]

    @cached_property
    def _ranks(self) -> dict[str, dict[Token, int]]:
        return {
            edge.name: {token: i for i, token in enumerate(self.transversal(edge.name))}
            for edge in self.graph.edges
        }

    def _require(self, vertex: str, g: Token, edge: str) -> None:
        if not self.contains(vertex, g):
            raise BackendRefusalError(
                f"Token {g!r} is not an element of the vertex group at {vertex}", locus=edge
            )
