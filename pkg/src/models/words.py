from dataclasses import dataclass
from typing import Hashable, NamedTuple, Optional


class Letter(NamedTuple):
    """One ``g e`` pair of a word: the token sits immediately left of its edge."""

    token: Hashable
    edge: str


Path = tuple[Letter, ...]


@dataclass(frozen=True)
class GWord:
    """g₁ e₁ … gₙ eₙ [gₙ₊₁] read as groupoid composition: r(w) = r(e₁), s(w) = s(eₙ).

    ``tail`` is None for a bare path; for n = 0 the tail is the only token.
    """

    range: str
    source: str
    letters: Path = ()
    tail: Optional[Hashable] = None

    @property
    def length(self) -> int:
        return len(self.letters)

    @property
    def edges(self) -> tuple[str, ...]:
        return tuple(letter.edge for letter in self.letters)


@dataclass(frozen=True)
class ReducedWord(GWord):
    """Normal form. Always carries a tail token, possibly the identity."""

    @property
    def is_loop(self) -> bool:
        return self.range == self.source
