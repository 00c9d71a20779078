import logging
from itertools import combinations
from typing import Hashable, Iterator, Optional, Sequence

from src.core.config import settings
from src.core.exceptions import (
    BoundExceededError,
    HypothesisFailedError,
    NotFoundWithinBoundError,
    WitnessCheckError,
)
from src.models.boundary import BoundaryPoint, Cylinder, CylinderUnion
from src.models.dynamics import (
    FillingWitness,
    NorthSouthVerdict,
    ParadoxicalWitness,
    RepeatablePath,
    SubequivalenceCheck,
    SubequivalenceWitness,
)
from src.models.graphs import GraphOfGroups
from src.models.words import GWord, Letter, Path, ReducedWord
from src.services.boundary_service import (
    as_union,
    children,
    complement,
    full_boundary,
    image_of_cylinder,
    image_of_union,
    intersection,
    is_subset,
    periodic_point,
    refine,
    equals,
    union,
)
from src.services.dynamics_service import check_minimality, is_repeatable
from src.services.normal_form_service import (
    invert,
    multiply,
    path_word,
    power,
)

logger = logging.getLogger(__name__)


class _Budget:
    """Candidate counter shared by every search of one construction.

    A single search stops after its share of the bound; all searches together stop at the bound.
    """

    def __init__(self, bound: int, shares: int):
        self.bound = bound
        self.share = max(bound // max(shares, 1), 1)
        self.examined = 0

    @property
    def spent(self) -> bool:
        return self.examined >= self.bound

    def exhausted(self) -> NotFoundWithinBoundError:
        return NotFoundWithinBoundError(
            f"No witness among {self.examined} candidate loops", bound=self.bound
        )


class WitnessService:
    """Builds and checks boundary-action witnesses with exact cylinder arithmetic."""

    def loops_at(self, g: GraphOfGroups, base: str) -> Iterator[ReducedWord]:
        """Loops at ``base`` with identity tail, identity first, then canonical order."""
        level: list[Path] = [()]
        while level:
            for path in level:
                if not path or g.graph.source(path[-1].edge) == base:
                    yield path_word(g, base, path)
            level = [child for path in level for child in children(g, base, path)]

    def _require_filling_hypotheses(self, g: GraphOfGroups, mu: RepeatablePath) -> None:
        if not is_repeatable(g, mu.letters):
            raise HypothesisFailedError("repeatable-path", "μ is not a repeatable path")
        if not mu.flagged:
            raise HypothesisFailedError(
                "repeatable-path", f"|Σ| of the reverse of {mu.last_edge} is below 2"
            )
        verdict = check_minimality(g)
        if not verdict.minimal:
            raise HypothesisFailedError(
                "minimal", f"no flow into {verdict.offending_edge}; the action is not minimal"
            )

    def mu_power(self, g: GraphOfGroups, mu: RepeatablePath, m: int) -> ReducedWord:
        return path_word(g, mu.base, mu.letters * m)

    def twist(self, g: GraphOfGroups, mu: RepeatablePath) -> Hashable:
        """t: the second transversal token of the reverse of μ's last edge."""
        return g.transversal(g.graph.partner(mu.last_edge))[1]

    def _least_loop_into(
        self, g: GraphOfGroups, base: str, cylinder: Cylinder, target: CylinderUnion, budget: _Budget
    ) -> Optional[ReducedWord]:
        for count, gamma in enumerate(self.loops_at(g, base), start=1):
            if count > budget.share or budget.spent:
                return None
            budget.examined += 1
            if is_subset(g, image_of_cylinder(g, gamma, cylinder), target):
                return gamma
        return None

    def partition(self, g: GraphOfGroups, mu: RepeatablePath) -> tuple[CylinderUnion, CylinderUnion]:
        """(A, B): B is the cylinder of the identity-token reverse of μ's last edge, A the rest."""
        base = mu.base
        reverse = g.graph.partner(mu.last_edge)
        b = Cylinder(base, (Letter(g.backend.identity(base), reverse),))
        part_b = as_union(g, b)
        return complement(g, part_b), part_b

    def _contract(
        self, g: GraphOfGroups, mu: RepeatablePath, m: int, gamma: ReducedWord, twisted: bool
    ) -> ReducedWord:
        element = multiply(g, gamma, self.mu_power(g, mu, m))
        if twisted:
            t = ReducedWord(range=mu.base, source=mu.base, tail=self.twist(g, mu))
            element = multiply(g, element, t)
        return element

    def construct_filling_witness(
        self,
        g: GraphOfGroups,
        mu: RepeatablePath,
        o1: Cylinder,
        o2: Cylinder,
        search_bound: Optional[int] = None,
    ) -> FillingWitness:
        self._require_filling_hypotheses(g, mu)
        budget = _Budget(search_bound or settings.witness_search_bound, settings.witness_max_power)
        base = mu.base
        targets = (as_union(g, o1), as_union(g, o2))
        if any(not o.prefix for o in (o1, o2)):
            identity = path_word(g, base, ())
            part_a, part_b = self.partition(g, mu)
            logger.info("A target is the whole boundary; the identity covers it")
            return FillingWitness(
                targets=(o1, o2),
                mu=mu,
                power=0,
                gammas=(identity, identity),
                t=self.twist(g, mu),
                elements=(identity, identity),
                part_a=part_a,
                part_b=part_b,
                candidates_examined=0,
            )
        for m in range(1, settings.witness_max_power + 1):
            cylinder = Cylinder(base, mu.letters * m)
            gammas = []
            for target in targets:
                gamma = self._least_loop_into(g, base, cylinder, target, budget)
                if gamma is None:
                    break
                gammas.append(gamma)
            if len(gammas) < 2:
                continue
            h1 = self._contract(g, mu, m, gammas[0], twisted=False)
            h2 = self._contract(g, mu, m, gammas[1], twisted=True)
            part_a, part_b = self.partition(g, mu)
            witness = FillingWitness(
                targets=(o1, o2),
                mu=mu,
                power=m,
                gammas=(gammas[0], gammas[1]),
                t=self.twist(g, mu),
                elements=(h1, h2),
                part_a=part_a,
                part_b=part_b,
                candidates_examined=budget.examined,
            )
            if not self.verify_filling_witness(g, witness):
                raise WitnessCheckError(
                    "Constructed filling witness does not cover the boundary", locus=f"m = {m}"
                )
            logger.info(f"Filling witness at power {m} after {budget.examined} candidates")
            return witness
        logger.warning(f"Filling search inconclusive after {budget.examined} candidates")
        raise budget.exhausted()

    def verify_filling(
        self, g: GraphOfGroups, base: str, targets: Sequence[CylinderUnion], elements: Sequence[GWord]
    ) -> bool:
        """⋃ gᵢ⁻¹Oᵢ is the whole boundary at ``base``."""
        covered = CylinderUnion(base=base)
        for target, element in zip(targets, elements, strict=True):
            covered = union(g, covered, image_of_union(g, invert(g, element), target))
        return equals(g, covered, full_boundary(base))

    def verify_filling_witness(self, g: GraphOfGroups, witness: FillingWitness) -> bool:
        targets = [as_union(g, o) for o in witness.targets]
        return self.verify_filling(g, witness.mu.base, targets, witness.elements)

    def _disjoint_targets(
        self, g: GraphOfGroups, target: CylinderUnion, count: int
    ) -> list[Cylinder]:
        depth = max((c.depth for c in target), default=0)
        limit = depth + count * max(len(g.graph.edges), 1) + 1
        while depth <= limit:
            pieces = refine(g, target, depth)
            if len(pieces) >= count:
                return [Cylinder(target.base, p) for p in pieces[:count]]
            depth += 1
        raise NotFoundWithinBoundError(
            f"Target does not split into {count} disjoint cylinders", bound=limit
        )

    def construct_subequivalence_witness(
        self,
        g: GraphOfGroups,
        mu: RepeatablePath,
        source: CylinderUnion,
        target: CylinderUnion,
        search_bound: Optional[int] = None,
    ) -> SubequivalenceWitness:
        """source ≺ target: each depth ≥ 1 piece of the source is contracted into its own sub-cylinder."""
        self._require_filling_hypotheses(g, mu)
        if target.is_empty:
            raise HypothesisFailedError("nonempty-target", "target set is empty")
        budget = _Budget(search_bound or settings.witness_search_bound, settings.witness_max_power)
        base = mu.base
        _, part_b = self.partition(g, mu)
        pieces = [Cylinder(base, p) for p in refine(g, source, 1)]
        slots = self._disjoint_targets(g, target, len(pieces))
        assigned: list[tuple[Cylinder, ReducedWord]] = []
        for piece, slot in zip(pieces, slots):
            twisted = is_subset(g, as_union(g, piece), part_b)
            element = self._element_into(g, mu, as_union(g, slot), twisted, budget)
            assigned.append((piece, element))
        witness = SubequivalenceWitness(source=source, target=target, pieces=tuple(assigned))
        logger.debug(f"Subequivalence witness with {len(assigned)} pieces")
        return witness

    def _element_into(
        self, g: GraphOfGroups, mu: RepeatablePath, slot: CylinderUnion, twisted: bool, budget: _Budget
    ) -> ReducedWord:
        for m in range(1, settings.witness_max_power + 1):
            gamma = self._least_loop_into(g, mu.base, Cylinder(mu.base, mu.letters * m), slot, budget)
            if gamma is not None:
                return self._contract(g, mu, m, gamma, twisted)
        logger.warning(f"Contraction search inconclusive after {budget.examined} candidates")
        raise budget.exhausted()

    def construct_paradoxical_witness(
        self,
        g: GraphOfGroups,
        mu: RepeatablePath,
        source: CylinderUnion,
        target: CylinderUnion,
        search_bound: Optional[int] = None,
    ) -> ParadoxicalWitness:
        first_slot, second_slot = self._disjoint_targets(g, target, 2)
        first = self.construct_subequivalence_witness(
            g, mu, source, as_union(g, first_slot), search_bound
        )
        second = self.construct_subequivalence_witness(
            g, mu, source, as_union(g, second_slot), search_bound
        )
        return ParadoxicalWitness(source=source, target=target, first=first, second=second)

    def verify_subequivalence(
        self, g: GraphOfGroups, witness: SubequivalenceWitness
    ) -> SubequivalenceCheck:
        pieces = CylinderUnion(base=witness.source.base)
        for piece, _ in witness.pieces:
            pieces = union(g, pieces, as_union(g, piece))
        uncovered = intersection(g, witness.source, complement(g, pieces))
        if not uncovered.is_empty:
            return SubequivalenceCheck(False, "cover", uncovered.cylinders[0])

        images: list[tuple[Cylinder, CylinderUnion]] = []
        for piece, element in witness.pieces:
            image = image_of_cylinder(g, element, piece)
            if not is_subset(g, image, witness.target):
                return SubequivalenceCheck(False, "containment", piece)
            images.append((piece, image))

        for (_, left), (_, right) in combinations(images, 2):
            overlap = intersection(g, left, right)
            if not overlap.is_empty:
                return SubequivalenceCheck(False, "disjointness", overlap.cylinders[0])
        return SubequivalenceCheck(True)

    def verify_paradoxical(self, g: GraphOfGroups, witness: ParadoxicalWitness) -> SubequivalenceCheck:
        for part in (witness.first, witness.second):
            check = self.verify_subequivalence(g, part)
            if not check.valid:
                return check
            if not is_subset(g, part.target, witness.target):
                return SubequivalenceCheck(False, "containment", part.target.cylinders[0])
        overlap = intersection(g, witness.first.target, witness.second.target)
        if not overlap.is_empty:
            return SubequivalenceCheck(False, "disjointness", overlap.cylinders[0])
        return SubequivalenceCheck(True)

    def axis_cylinder(self, g: GraphOfGroups, mu: RepeatablePath, sign: int, depth: int) -> Cylinder:
        """Depth-``depth`` cylinder around μ^{+∞} (sign 1) or μ^{-∞} (sign -1)."""
        if depth == 0:
            return Cylinder(mu.base)
        n = len(mu.letters)
        m = -(-depth // n)
        if sign > 0:
            return Cylinder(mu.base, (mu.letters * m)[:depth])
        word = power(g, self.mu_power(g, mu, 1), -m)
        return Cylinder(mu.base, word.letters[:depth])

    def repelling_point(self, g: GraphOfGroups, mu: RepeatablePath) -> Optional[BoundaryPoint]:
        inverse = invert(g, self.mu_power(g, mu, 1))
        if not g.backend.is_identity(mu.base, inverse.tail) or not is_repeatable(g, inverse.letters):
            return None
        return periodic_point(g, mu.base, inverse.letters)

    def verify_north_south(
        self,
        g: GraphOfGroups,
        mu: RepeatablePath,
        depth: Optional[int] = None,
        power_bound: Optional[int] = None,
    ) -> NorthSouthVerdict:
        if not is_repeatable(g, mu.letters):
            raise HypothesisFailedError("repeatable-path", "element is not a repeatable loop")
        depth = settings.north_south_depth if depth is None else depth
        bound = power_bound or settings.north_south_power_bound
        gamma = self.mu_power(g, mu, 1)
        attracting = self.axis_cylinder(g, mu, 1, depth)
        repelling = self.axis_cylinder(g, mu, -1, depth)
        u = as_union(g, attracting)
        v = as_union(g, repelling)
        outside_u = complement(g, u)
        outside_v = complement(g, v)
        for m in range(1, bound + 1):
            forward = image_of_union(g, power(g, gamma, m), outside_v)
            if not is_subset(g, forward, u):
                continue
            backward = image_of_union(g, power(g, gamma, -m), outside_u)
            if is_subset(g, backward, v):
                logger.info(f"North-south dynamics verified at power {m}")
                return NorthSouthVerdict(
                    verified=True,
                    power=m,
                    attracting=attracting,
                    repelling=repelling,
                    attracting_point=periodic_point(g, mu.base, mu.letters),
                    repelling_point=self.repelling_point(g, mu),
                )
        logger.warning(f"North-south check inconclusive up to power {bound}")
        raise BoundExceededError(f"No power up to {bound} contracts the complements", bound=bound)


witness_service = WitnessService()
