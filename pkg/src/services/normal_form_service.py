"""Bass-Serre normal forms and group arithmetic in π₁(𝒢, v).

A token gⱼ splits against eⱼ as s·α_{eⱼ}(h); relation R2 moves α_{eⱼ}(h) past eⱼ as the
carry α_{ēⱼ}(h), which is absorbed by the next token to the right. An edge followed by its
reverse with an identity transversal token between them cancels (R1 after R2).
"""

import logging
import re
from fractions import Fraction
from typing import Hashable, Iterable, NamedTuple, Optional

from src.core.exceptions import NotComposableError, NotGBSError, WordParseError
from src.models.graphs import GraphOfGroups, GroupKind
from src.models.words import GWord, Letter, Path, ReducedWord

logger = logging.getLogger(__name__)

FULL_BOUNDARY_LITERALS = ("", "*")
INVERSE_SUFFIX = "^-1"


class RewriteSite(NamedTuple):
    kind: str
    position: int


def identity_word(g: GraphOfGroups, vertex: str) -> ReducedWord:
    return ReducedWord(range=vertex, source=vertex, tail=g.backend.identity(vertex))


def path_word(g: GraphOfGroups, base: str, path: Path) -> ReducedWord:
    """A reduced 𝒢-path read as a group element with identity tail."""
    source = g.graph.source(path[-1].edge) if path else base
    return ReducedWord(range=base, source=source, letters=path, tail=g.backend.identity(source))


def validate_word(g: GraphOfGroups, word: GWord) -> None:
    graph = g.graph
    for i, letter in enumerate(word.letters):
        if not graph.has_edge(letter.edge):
            raise WordParseError(f"Unknown edge {letter.edge}", locus=f"letter {i + 1}")
        vertex = graph.range_of(letter.edge)
        if i == 0 and vertex != word.range:
            raise WordParseError(f"Word range {word.range} differs from r({letter.edge})", locus="letter 1")
        if i > 0 and graph.source(word.letters[i - 1].edge) != vertex:
            raise WordParseError("Consecutive edges are not composable", locus=f"letter {i + 1}")
        if not g.backend.contains(vertex, letter.token):
            raise WordParseError(f"Token {letter.token!r} is not in the group at {vertex}", locus=f"letter {i + 1}")
    end = graph.source(word.letters[-1].edge) if word.letters else word.range
    if end != word.source:
        raise WordParseError(f"Word source {word.source} differs from its last edge", locus="tail")
    if word.tail is not None and not g.backend.contains(end, word.tail):
        raise WordParseError(f"Tail {word.tail!r} is not in the group at {end}", locus="tail")


def settle(g: GraphOfGroups, stack: list[Letter], pending: Hashable, edge: str, following: Hashable) -> Hashable:
    """Split ``pending`` against ``edge``; push the letter or cancel it against the stack top.

    Returns the new pending token, which lives in the group at s(edge).
    """
    backend = g.backend
    source = g.graph.source(edge)
    s, h = backend.split(edge, pending)
    carried = backend.compose(source, backend.carry(edge, h), following)
    if stack and stack[-1].edge == g.graph.partner(edge) and backend.is_identity(g.graph.range_of(edge), s):
        top = stack.pop()
        return backend.compose(source, top.token, carried)
    stack.append(Letter(s, edge))
    return carried


def _run(
    g: GraphOfGroups,
    stack: list[Letter],
    pending: Hashable,
    letters: Path,
    tail: Optional[Hashable],
) -> Hashable:
    for i, letter in enumerate(letters):
        if i + 1 < len(letters):
            following = letters[i + 1].token
        elif tail is not None:
            following = tail
        else:
            following = g.backend.identity(g.graph.source(letter.edge))
        pending = settle(g, stack, pending, letter.edge, following)
    return pending


def reduce(g: GraphOfGroups, word: GWord) -> ReducedWord:
    validate_word(g, word)
    if not word.letters:
        tail = word.tail if word.tail is not None else g.backend.identity(word.range)
        return ReducedWord(range=word.range, source=word.source, tail=tail)
    stack: list[Letter] = []
    tail = _run(g, stack, word.letters[0].token, word.letters, word.tail)
    return ReducedWord(range=word.range, source=word.source, letters=tuple(stack), tail=tail)


def _as_reduced(g: GraphOfGroups, word: GWord) -> ReducedWord:
    return word if isinstance(word, ReducedWord) else reduce(g, word)


def multiply(g: GraphOfGroups, a: GWord, b: GWord) -> ReducedWord:
    if a.source != b.range:
        raise NotComposableError(a.source, b.range)
    a = _as_reduced(g, a)
    b = _as_reduced(g, b)
    vertex = a.source
    if not b.letters:
        tail = g.backend.compose(vertex, a.tail, b.tail)
        return ReducedWord(range=a.range, source=b.source, letters=a.letters, tail=tail)
    stack = list(a.letters)
    pending = g.backend.compose(vertex, a.tail, b.letters[0].token)
    tail = _run(g, stack, pending, b.letters, b.tail)
    return ReducedWord(range=a.range, source=b.source, letters=tuple(stack), tail=tail)


def invert(g: GraphOfGroups, a: GWord) -> ReducedWord:
    a = _as_reduced(g, a)
    backend = g.backend
    if not a.letters:
        return ReducedWord(range=a.source, source=a.range, tail=backend.invert(a.range, a.tail))
    graph = g.graph
    tokens = [backend.invert(a.source, a.tail)]
    tokens += [backend.invert(graph.range_of(l.edge), l.token) for l in reversed(a.letters[1:])]
    edges = [graph.partner(l.edge) for l in reversed(a.letters)]
    first = a.letters[0]
    letters = tuple(Letter(t, e) for t, e in zip(tokens, edges))
    tail = backend.invert(graph.range_of(first.edge), first.token)
    return reduce(g, GWord(range=a.source, source=a.range, letters=letters, tail=tail))


def power(g: GraphOfGroups, a: GWord, exponent: int) -> ReducedWord:
    """aᵐ by repeated multiplication; negative exponents use the inverse."""
    base = _as_reduced(g, a)
    if base.range != base.source and exponent != 1:
        raise NotComposableError(base.source, base.range)
    if exponent < 0:
        base, exponent = invert(g, base), -exponent
    result = identity_word(g, base.range)
    for _ in range(exponent):
        result = multiply(g, result, base)
    return result


def modular_value(g: GraphOfGroups, word: GWord) -> Fraction:
    """q(γ) = ∏ k_{ēᵢ}/k_{eᵢ} over the edges of the word."""
    if g.kind != GroupKind.GBS:
        raise NotGBSError("modular_value")
    q = Fraction(1)
    for letter in word.letters:
        q *= Fraction(g.backend.k(g.graph.partner(letter.edge)), g.backend.k(letter.edge))
    return q


def is_reduced_path(g: GraphOfGroups, base: str, path: Path) -> bool:
    graph = g.graph
    previous: Optional[str] = None
    for letter in path:
        if not graph.has_edge(letter.edge):
            return False
        expected = base if previous is None else graph.source(previous)
        if graph.range_of(letter.edge) != expected:
            return False
        if not g.backend.in_transversal(letter.edge, letter.token):
            return False
        if previous is not None and graph.partner(previous) == letter.edge:
            if g.backend.is_identity(expected, letter.token):
                return False
        previous = letter.edge
    return True


def is_reduced(g: GraphOfGroups, word: GWord) -> bool:
    return word.tail is not None and is_reduced_path(g, word.range, word.letters)


# Rewrite steps, one relation application at a time


def rewrite_sites(g: GraphOfGroups, word: GWord) -> list[RewriteSite]:
    backend = g.backend
    sites: list[RewriteSite] = []
    letters = word.letters
    for j, letter in enumerate(letters):
        s, _ = backend.split(letter.edge, letter.token)
        if s != letter.token:
            sites.append(RewriteSite("split", j))
    for i in range(len(letters) - 1):
        nxt = letters[i + 1]
        if nxt.edge == g.graph.partner(letters[i].edge):
            s, _ = backend.split(nxt.edge, nxt.token)
            if backend.is_identity(g.graph.range_of(nxt.edge), s):
                sites.append(RewriteSite("cancel", i))
    return sites


def apply_rewrite(g: GraphOfGroups, word: GWord, site: RewriteSite) -> GWord:
    backend = g.backend
    graph = g.graph
    letters = list(word.letters)
    tail = word.tail
    if site.kind == "split":
        j = site.position
        edge = letters[j].edge
        source = graph.source(edge)
        s, h = backend.split(edge, letters[j].token)
        letters[j] = Letter(s, edge)
        if j + 1 < len(letters):
            nxt = letters[j + 1]
            letters[j + 1] = Letter(backend.compose(source, backend.carry(edge, h), nxt.token), nxt.edge)
        else:
            rest = tail if tail is not None else backend.identity(source)
            tail = backend.compose(source, backend.carry(edge, h), rest)
        return GWord(range=word.range, source=word.source, letters=tuple(letters), tail=tail)

    i = site.position
    edge = letters[i].edge
    vertex = graph.range_of(edge)
    _, h = backend.split(letters[i + 1].edge, letters[i + 1].token)
    if i + 2 < len(letters):
        following = letters[i + 2].token
    else:
        following = tail if tail is not None else backend.identity(vertex)
    merged = backend.compose(vertex, backend.compose(vertex, letters[i].token, backend.embed(edge, h)), following)
    if i + 2 < len(letters):
        rebuilt = letters[:i] + [Letter(merged, letters[i + 2].edge)] + letters[i + 3 :]
        return GWord(range=word.range, source=word.source, letters=tuple(rebuilt), tail=tail)
    return GWord(range=word.range, source=word.source, letters=tuple(letters[:i]), tail=merged)


# Word text syntax


def resolve_edge(g: GraphOfGroups, name: str, position: int) -> str:
    if g.graph.has_edge(name):
        return name
    if name.endswith(INVERSE_SUFFIX) and g.graph.has_edge(name[: -len(INVERSE_SUFFIX)]):
        return g.graph.partner(name[: -len(INVERSE_SUFFIX)])
    raise WordParseError(f"Unknown edge '{name}'", locus=f"item {position}")


def _items(text: str) -> list[tuple[int, str]]:
    return [(m.start(), m.group()) for m in re.finditer(r"\S+", text)]


def parse_word(g: GraphOfGroups, text: str, base: Optional[str] = None) -> GWord:
    """Parse "g₁ e₁ g₂ e₂ … [gₙ₊₁]"; tokens sit at even positions, edges at odd ones."""
    items = _items(text)
    if not items:
        raise WordParseError("Empty word", locus="item 1")
    graph = g.graph
    edges = [resolve_edge(g, items[i][1], i + 1) for i in range(1, len(items), 2)]
    for i in range(1, len(edges)):
        if graph.source(edges[i - 1]) != graph.range_of(edges[i]):
            raise WordParseError(
                f"Edges {edges[i - 1]} and {edges[i]} are not composable",
                locus=f"item {2 * i + 2} (column {items[2 * i + 1][0] + 1})",
            )
    start = base or g.default_base
    range_vertex = graph.range_of(edges[0]) if edges else start

    tokens: list[Hashable] = []
    for j in range(0, len(items), 2):
        index = j // 2
        if index < len(edges):
            vertex = graph.range_of(edges[index])
        else:
            vertex = graph.source(edges[-1]) if edges else start
        column, literal = items[j]
        try:
            tokens.append(g.backend.parse_token(vertex, literal))
        except ValueError as e:
            raise WordParseError(f"Bad token '{literal}': {e}", locus=f"item {j + 1} (column {column + 1})")

    letters = tuple(Letter(t, e) for t, e in zip(tokens, edges))
    tail = tokens[len(edges)] if len(tokens) > len(edges) else None
    source = graph.source(edges[-1]) if edges else range_vertex
    word = GWord(range=range_vertex, source=source, letters=letters, tail=tail)
    logger.debug(f"Parsed word with {len(letters)} edges from '{text}'")
    return word


def parse_loop(g: GraphOfGroups, text: str, base: str) -> GWord:
    word = parse_word(g, text, base)
    if word.range != base or word.source != base:
        raise WordParseError(f"'{text}' is not a loop at {base}", locus="item 1")
    return word


def parse_path(g: GraphOfGroups, text: str, base: str) -> Path:
    """Cylinder literal: a reduced 𝒢-path from ``base``; an identity tail is tolerated."""
    if text.strip() in FULL_BOUNDARY_LITERALS:
        return ()
    word = parse_word(g, text, base)
    if word.letters and word.range != base:
        raise WordParseError(f"Path does not start at {base}", locus="item 2")
    if word.tail is not None and not g.backend.is_identity(word.source, word.tail):
        raise WordParseError("A path literal cannot carry a non-identity tail", locus="tail")
    if not is_reduced_path(g, base, word.letters):
        raise WordParseError(f"'{text}' is not a reduced path", locus="item 1")
    return word.letters


def format_path(g: GraphOfGroups, path: Iterable[Letter]) -> str:
    parts: list[str] = []
    for letter in path:
        parts.append(g.backend.format_token(g.graph.range_of(letter.edge), letter.token))
        parts.append(letter.edge)
    return " ".join(parts)


def format_word(g: GraphOfGroups, word: GWord) -> str:
    head = format_path(g, word.letters)
    if word.tail is None:
        return head
    tail = g.backend.format_token(word.source, word.tail)
    return f"{head} {tail}" if head else tail
