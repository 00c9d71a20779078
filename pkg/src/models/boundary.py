from dataclasses import dataclass
from typing import Iterator

from src.models.words import Letter, Path


@dataclass(frozen=True)
class Cylinder:
    """Z(prefix): infinite reduced words from ``base`` starting with ``prefix``.

    The empty prefix is the whole boundary at ``base``.
    """

    base: str
    prefix: Path = ()

    @property
    def depth(self) -> int:
        return len(self.prefix)

    def contains_prefix(self, path: Path) -> bool:
        return path[: len(self.prefix)] == self.prefix


@dataclass(frozen=True)
class CylinderUnion:
    base: str
    cylinders: tuple[Cylinder, ...] = ()

    @property
    def is_empty(self) -> bool:
        return not self.cylinders

    def __iter__(self) -> Iterator[Cylinder]:
        return iter(self.cylinders)

    def __len__(self) -> int:
        return len(self.cylinders)


@dataclass(frozen=True)
class BoundaryPoint:
    """Eventually periodic infinite reduced word: prefix · cycle · cycle · …"""

    base: str
    prefix: Path
    cycle: Path

    def letter(self, i: int) -> Letter:
        if i < len(self.prefix):
            return self.prefix[i]
        return self.cycle[(i - len(self.prefix)) % len(self.cycle)]

    def initial(self, n: int) -> Path:
        return tuple(self.letter(i) for i in range(n))


@dataclass(frozen=True)
class TreeLevel:
    base: str
    depth: int
    paths: tuple[Path, ...]

    def __len__(self) -> int:
        return len(self.paths)
