from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from typing import Annotated, Literal, Optional, Union

from src.models.graphs import DefiningKind, GroupKind

IDENTIFIER = r"^[^\s()]+$"


class BaseDocument(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    id: Optional[str] = Field(default=None, description="Instance identifier used in reports")
    base: Optional[str] = Field(default=None, description="Base vertex; defaults to the first vertex")


class DefiningGraphDocument(BaseDocument):
    kind: Literal["defining-graph"]
    group: DefiningKind = Field(default=DefiningKind.RACG, description="racg or raag")
    vertices: list[Annotated[str, Field(pattern=IDENTIFIER)]] = Field(..., min_length=1)
    edges: list[tuple[str, str]] = Field(default_factory=list)


class TableDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    elements: list[str] = Field(..., min_length=1)
    table: list[list[str]] = Field(..., description="Row a, column b holds a*b")


class EdgeDocument(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    id: str = Field(..., min_length=1, pattern=IDENTIFIER)
    source: str = Field(..., alias="from")
    to: str
    rev_id: Optional[str] = Field(default=None, pattern=IDENTIFIER)
    k: Optional[int] = Field(default=None, description="Signed index of the edge in its range group")
    k_rev: Optional[int] = Field(default=None, description="Signed index of the reverse edge")
    group: Optional[TableDocument] = Field(default=None, description="Edge group (finite-table)")
    alpha: Optional[dict[str, str]] = None
    alpha_rev: Optional[dict[str, str]] = None

    @field_validator("k", "k_rev")
    @classmethod
    def index_nonzero(cls, value: Optional[int]) -> Optional[int]:
        if value == 0:
            raise ValueError("zero index: edge indices must be nonzero")
        return value


class GraphOfGroupsDocument(BaseDocument):
    kind: Literal["graph-of-groups"]
    gbs: bool = False
    backend: Optional[GroupKind] = None
    vertices: list[Annotated[str, Field(pattern=IDENTIFIER)]] = Field(..., min_length=1)
    edges: list[EdgeDocument] = Field(default_factory=list)
    vertex_orders: Optional[dict[str, Annotated[int, Field(ge=1)]]] = None
    vertex_groups: Optional[dict[str, TableDocument]] = None

    @property
    def group_kind(self) -> GroupKind:
        if self.backend is not None:
            return self.backend
        return GroupKind.GBS if self.gbs else GroupKind.TRIVIAL_EDGE

    @model_validator(mode="after")
    def backend_payload(self) -> "GraphOfGroupsDocument":
        kind = self.group_kind
        if self.gbs and kind != GroupKind.GBS:
            raise ValueError(f"'gbs': true conflicts with backend '{kind}'")
        for edge in self.edges:
            if kind == GroupKind.GBS and (edge.k is None or edge.k_rev is None):
                raise ValueError(f"GBS edge {edge.id} needs both k and k_rev")
            if kind == GroupKind.FINITE_TABLE and (
                edge.group is None or edge.alpha is None or edge.alpha_rev is None
            ):
                raise ValueError(f"finite-table edge {edge.id} needs group, alpha and alpha_rev")
        if kind == GroupKind.TRIVIAL_EDGE and self.vertex_orders is None:
            raise ValueError("trivial-edge-group documents need vertex_orders")
        if kind == GroupKind.FINITE_TABLE and self.vertex_groups is None:
            raise ValueError("finite-table documents need vertex_groups")
        return self


InputDocument = Annotated[
    Union[DefiningGraphDocument, GraphOfGroupsDocument],
    Field(discriminator="kind"),
]
