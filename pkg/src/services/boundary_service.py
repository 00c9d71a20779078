"""The Bass-Serre tree at a base vertex and its boundary as a clopen cylinder algebra."""

import logging
from typing import Hashable, Iterable, Optional

from src.core.config import settings
from src.core.exceptions import (
    FlagError,
    NonPeriodicCarryError,
    NotComposableError,
    SingularInputError,
    WordParseError,
)
from src.models.boundary import BoundaryPoint, Cylinder, CylinderUnion, TreeLevel
from src.models.graphs import GraphOfGroups
from src.models.words import GWord, Letter, Path
from src.services.normal_form_service import (
    format_path,
    is_reduced_path,
    multiply,
    parse_path,
    path_word,
    reduce,
    settle,
)

logger = logging.getLogger(__name__)


def require_non_singular(g: GraphOfGroups) -> None:
    if not g.non_singular:
        raise SingularInputError(g.singular_edges)


def path_key(g: GraphOfGroups, path: Path) -> tuple:
    """Canonical order: length, then edge declaration order, then transversal index."""
    return (len(path), tuple((g.graph.order(l.edge), g.backend.rank(l.edge, l.token)) for l in path))


def is_prefix(prefix: Path, path: Path) -> bool:
    return len(prefix) <= len(path) and path[: len(prefix)] == prefix


def children(g: GraphOfGroups, base: str, path: Path) -> list[Path]:
    """One-step reduced extensions of ``path``, canonical order."""
    graph = g.graph
    backend = g.backend
    if path:
        last = path[-1].edge
        vertex = graph.source(last)
        backtrack = graph.partner(last)
    else:
        vertex, backtrack = base, None
    extensions: list[Path] = []
    for edge in graph.incoming(vertex):
        for token in backend.transversal(edge.name):
            if edge.name == backtrack and backend.is_identity(vertex, token):
                continue
            extensions.append(path + (Letter(token, edge.name),))
    return extensions


def enumerate_level(g: GraphOfGroups, base: str, depth: int) -> TreeLevel:
    require_non_singular(g)
    if depth < 0:
        raise FlagError(f"depth must be non-negative, got {depth}", locus="depth")
    level: list[Path] = [()]
    for _ in range(depth):
        level = [child for path in level for child in children(g, base, path)]
    logger.debug(f"Level {depth} at {base} has {len(level)} paths")
    return TreeLevel(base=base, depth=depth, paths=tuple(level))


# Cylinder algebra


def full_boundary(base: str) -> CylinderUnion:
    return CylinderUnion(base=base, cylinders=(Cylinder(base),))


def empty_set(base: str) -> CylinderUnion:
    return CylinderUnion(base=base)


def normalize(g: GraphOfGroups, base: str, paths: Iterable[Path]) -> CylinderUnion:
    """Coarsest antichain: drop extensions, then merge complete sibling sets into parents."""
    ordered = sorted(set(paths), key=lambda p: path_key(g, p))
    antichain: list[Path] = []
    for path in ordered:
        if not any(is_prefix(kept, path) for kept in antichain):
            antichain.append(path)
    current = set(antichain)
    changed = True
    while changed:
        changed = False
        for parent in sorted({p[:-1] for p in current if p}, key=len, reverse=True):
            kids = children(g, base, parent)
            if kids and all(kid in current for kid in kids):
                current.difference_update(kids)
                current.add(parent)
                changed = True
    cylinders = tuple(Cylinder(base, p) for p in sorted(current, key=lambda p: path_key(g, p)))
    return CylinderUnion(base=base, cylinders=cylinders)


def _same_base(a: CylinderUnion, b: CylinderUnion) -> str:
    if a.base != b.base:
        raise NotComposableError(a.base, b.base)
    return a.base


def union(g: GraphOfGroups, a: CylinderUnion, b: CylinderUnion) -> CylinderUnion:
    base = _same_base(a, b)
    return normalize(g, base, [c.prefix for c in a] + [c.prefix for c in b])


def intersection(g: GraphOfGroups, a: CylinderUnion, b: CylinderUnion) -> CylinderUnion:
    base = _same_base(a, b)
    common: list[Path] = []
    for x in a:
        for y in b:
            if is_prefix(x.prefix, y.prefix):
                common.append(y.prefix)
            elif is_prefix(y.prefix, x.prefix):
                common.append(x.prefix)
    return normalize(g, base, common)


def _complement_within(g: GraphOfGroups, base: str, prefix: Path, pieces: list[Path]) -> list[Path]:
    if any(is_prefix(piece, prefix) for piece in pieces):
        return []
    if not pieces:
        return [prefix]
    result: list[Path] = []
    for child in children(g, base, prefix):
        below = [piece for piece in pieces if is_prefix(child, piece)]
        result.extend(_complement_within(g, base, child, below))
    return result


def complement(g: GraphOfGroups, a: CylinderUnion) -> CylinderUnion:
    pieces = [c.prefix for c in a]
    return normalize(g, a.base, _complement_within(g, a.base, (), pieces))


def difference(g: GraphOfGroups, a: CylinderUnion, b: CylinderUnion) -> CylinderUnion:
    return intersection(g, a, complement(g, b))


def is_subset(g: GraphOfGroups, a: CylinderUnion, b: CylinderUnion) -> bool:
    return difference(g, a, b).is_empty


def equals(g: GraphOfGroups, a: CylinderUnion, b: CylinderUnion) -> bool:
    return normalize(g, a.base, [c.prefix for c in a]) == normalize(g, b.base, [c.prefix for c in b])


def as_union(g: GraphOfGroups, cylinder: Cylinder) -> CylinderUnion:
    return normalize(g, cylinder.base, [cylinder.prefix])


def refine(g: GraphOfGroups, a: CylinderUnion, depth: int) -> list[Path]:
    """Depth-``depth`` paths whose cylinders partition ``a`` (pieces deeper than ``depth`` kept as is)."""
    result: list[Path] = []
    for cylinder in a:
        frontier = [cylinder.prefix]
        while frontier and len(frontier[0]) < depth:
            frontier = [child for path in frontier for child in children(g, a.base, path)]
        result.extend(frontier)
    return sorted(result, key=lambda p: path_key(g, p))


# Boundary points


def canonical_point(g: GraphOfGroups, point: BoundaryPoint) -> BoundaryPoint:
    """Validate, then reduce to the shortest prefix and primitive cycle."""
    if not point.cycle:
        raise WordParseError("A boundary point needs a nonempty cycle", locus="cycle")
    if not is_reduced_path(g, point.base, point.prefix + point.cycle + point.cycle):
        raise WordParseError("prefix · cycle · cycle … is not reduced", locus="cycle")
    cycle = point.cycle
    n = len(cycle)
    for period in range(1, n + 1):
        if n % period == 0 and cycle == cycle[:period] * (n // period):
            cycle = cycle[:period]
            break
    prefix = point.prefix
    while prefix and prefix[-1] == cycle[-1]:
        prefix = prefix[:-1]
        cycle = (cycle[-1],) + cycle[:-1]
    return BoundaryPoint(base=point.base, prefix=prefix, cycle=cycle)


def periodic_point(g: GraphOfGroups, base: str, cycle: Path, prefix: Path = ()) -> BoundaryPoint:
    return canonical_point(g, BoundaryPoint(base=base, prefix=prefix, cycle=cycle))


def point_in(point: BoundaryPoint, a: CylinderUnion) -> bool:
    return point.base == a.base and any(
        point.initial(c.depth) == c.prefix for c in a
    )


def act_on_point(g: GraphOfGroups, gamma: GWord, point: BoundaryPoint) -> BoundaryPoint:
    """γ·ξ by streaming ξ through the reduction stack until the pending carry repeats."""
    gamma = reduce(g, gamma)
    if gamma.range != point.base or gamma.source != point.base:
        raise NotComposableError(gamma.source, point.base)
    backend = g.backend
    base = point.base
    stack: list[Letter] = list(gamma.letters)
    pending: Hashable = backend.compose(base, gamma.tail, point.letter(0).token)

    start = len(point.prefix)
    period = len(point.cycle)
    limit = max(len(gamma.letters) + 2 * period, settings.carry_cycle_bound)
    seen: dict[Hashable, int] = {}
    settled = False
    boundaries = 0
    i = 0
    while True:
        # after the first push no later letter can cancel
        if settled and i >= start and (i - start) % period == 0:
            if pending in seen:
                mark = seen[pending]
                result = BoundaryPoint(base=base, prefix=tuple(stack[:mark]), cycle=tuple(stack[mark:]))
                return canonical_point(g, result)
            seen[pending] = len(stack)
            boundaries += 1
            if boundaries > limit:
                logger.warning(f"Carry did not stabilise after {limit} periods")
                raise NonPeriodicCarryError(
                    "Image of the boundary point is not eventually periodic within the bound",
                    bound=limit,
                )
        letter = point.letter(i)
        depth = len(stack)
        pending = settle(g, stack, pending, letter.edge, point.letter(i + 1).token)
        settled = settled or len(stack) > depth
        i += 1


def image_of_cylinder(g: GraphOfGroups, gamma: GWord, cylinder: Cylinder) -> CylinderUnion:
    """γ·Z(p) = Z(q) for q the path part of γp, once q is not a prefix of γ's own path."""
    gamma = reduce(g, gamma)
    base = cylinder.base
    if gamma.range != base or gamma.source != base:
        raise NotComposableError(gamma.source, base)
    anchor = gamma.letters
    work: list[Path] = [cylinder.prefix]
    images: list[Path] = []
    while work:
        prefix = work.pop()
        moved = multiply(g, gamma, path_word(g, base, prefix)).letters
        if is_prefix(moved, anchor):
            work.extend(children(g, base, prefix))
        else:
            images.append(moved)
    return normalize(g, base, images)


def image_of_union(g: GraphOfGroups, gamma: GWord, a: CylinderUnion) -> CylinderUnion:
    paths: list[Path] = []
    for cylinder in a:
        paths.extend(c.prefix for c in image_of_cylinder(g, gamma, cylinder))
    return normalize(g, a.base, paths)


# Text forms


def parse_cylinder(g: GraphOfGroups, text: str, base: str) -> Cylinder:
    return Cylinder(base=base, prefix=parse_path(g, text, base))


def parse_point(g: GraphOfGroups, text: str, base: str) -> BoundaryPoint:
    """"prefix (cycle)", e.g. "1 ē (0 e)"; the parentheses hold the repeated part."""
    if text.count("(") != 1 or text.count(")") != 1 or not text.rstrip().endswith(")"):
        raise WordParseError("Boundary point must read 'prefix (cycle)'", locus="point")
    head, _, rest = text.partition("(")
    cycle_text = rest.rstrip()[:-1]
    prefix = parse_path(g, head, base) if head.strip() else ()
    cycle_base = g.graph.source(prefix[-1].edge) if prefix else base
    cycle = parse_path(g, cycle_text, cycle_base)
    return periodic_point(g, base, cycle, prefix)


def format_cylinder(g: GraphOfGroups, cylinder: Cylinder) -> str:
    return f"Z({format_path(g, cylinder.prefix) or '*'})"


def format_union(g: GraphOfGroups, a: CylinderUnion) -> str:
    if a.is_empty:
        return "∅"
    return " ∪ ".join(format_cylinder(g, c) for c in a)


def format_point(g: GraphOfGroups, point: BoundaryPoint) -> str:
    prefix = format_path(g, point.prefix)
    cycle = f"({format_path(g, point.cycle)})"
    return f"{prefix} {cycle}" if prefix else cycle


def first_point(g: GraphOfGroups, cylinder: Cylinder) -> Optional[BoundaryPoint]:
    """Some eventually periodic point of the cylinder, built greedily from canonical children."""
    path = cylinder.prefix
    states: dict[str, int] = {}
    while True:
        last = path[-1].edge if path else None
        if last is not None and len(path) > cylinder.depth:
            if last in states:
                mark = states[last]
                return periodic_point(g, cylinder.base, path[mark:], path[:mark])
            states[last] = len(path)
        options = children(g, cylinder.base, path)
        if not options:
            return None
        path = options[0]
