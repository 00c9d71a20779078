import pytest

from src.core.exceptions import BoundExceededError, HypothesisFailedError, NotFoundWithinBoundError
from src.models.boundary import Cylinder, CylinderUnion
from src.models.dynamics import RepeatablePath, SubequivalenceWitness
from src.models.words import Letter, ReducedWord
from src.services.boundary_service import (
    as_union,
    format_cylinder,
    format_union,
    full_boundary,
    parse_cylinder,
    union,
)
from src.services.dynamics_service import as_repeatable, find_flagged_repeatable
from src.services.normal_form_service import format_word, parse_path
from src.services.witness_service import _Budget, witness_service
from tests.conftest import load_graph


def mu_of(g, text: str, base: str = "v") -> RepeatablePath:
    return as_repeatable(g, parse_path(g, text, base))


def test_loops_start_with_the_identity(bs23):
    loops = witness_service.loops_at(bs23, "v")
    assert [format_word(bs23, next(loops)) for _ in range(3)] == ["0", "0 e 0", "1 e 0"]


def test_partition_splits_off_the_reverse_cylinder(bs23):
    part_a, part_b = witness_service.partition(bs23, mu_of(bs23, "0 e"))
    assert format_union(bs23, part_b) == "Z(0 ē)"
    assert format_union(bs23, part_a) == "Z(0 e) ∪ Z(1 e) ∪ Z(1 ē) ∪ Z(2 ē)"


def test_filling_witness_in_bs_2_3(bs23):
    mu = mu_of(bs23, "0 e")
    o1 = parse_cylinder(bs23, "0 e", "v")
    o2 = parse_cylinder(bs23, "0 ē", "v")
    witness = witness_service.construct_filling_witness(bs23, mu, o1, o2)
    assert witness.power == 1
    assert witness.t == 1
    assert [format_word(bs23, gamma) for gamma in witness.gammas] == ["0", "0 ē 1 e 0"]
    assert format_word(bs23, witness.elements[0]) == "0 e 0"
    assert format_word(bs23, witness.elements[1]) == "0 ē 1 e 0 e 1"
    assert witness_service.verify_filling_witness(bs23, witness)


def test_filling_witness_for_deeper_targets(bs23):
    mu = mu_of(bs23, "0 e")
    o1 = parse_cylinder(bs23, "1 e 1 ē", "v")
    o2 = parse_cylinder(bs23, "2 ē 1 e", "v")
    witness = witness_service.construct_filling_witness(bs23, mu, o1, o2)
    assert witness_service.verify_filling_witness(bs23, witness)


def test_filling_needs_minimality(bs13):
    with pytest.raises(HypothesisFailedError) as exc:
        witness_service.construct_filling_witness(
            bs13, mu_of(bs13, "0 e"), Cylinder("v"), Cylinder("v")
        )
    assert exc.value.locus == "minimal"


def test_filling_needs_a_flagged_path(bs11):
    mu = RepeatablePath(base="v", letters=(Letter(0, "e"),), flagged=False)
    with pytest.raises(HypothesisFailedError) as exc:
        witness_service.construct_filling_witness(bs11, mu, Cylinder("v"), Cylinder("v"))
    assert exc.value.locus == "repeatable-path"


def test_filling_search_is_bounded(bs23):
    mu = mu_of(bs23, "0 e")
    o1 = parse_cylinder(bs23, "1 ē 1 e 1 ē", "v")
    o2 = parse_cylinder(bs23, "2 ē 1 e 1 ē", "v")
    with pytest.raises(NotFoundWithinBoundError):
        witness_service.construct_filling_witness(bs23, mu, o1, o2, search_bound=6)


def test_filling_on_a_wedge(wedge):
    mu = find_flagged_repeatable(wedge, "v1")
    o1 = parse_cylinder(wedge, "0 e1", "v1")
    o2 = parse_cylinder(wedge, "0 f1", "v1")
    witness = witness_service.construct_filling_witness(wedge, mu, o1, o2)
    assert witness_service.verify_filling_witness(wedge, witness)


def test_verify_filling_rejects_a_non_cover(bs23):
    target = as_union(bs23, parse_cylinder(bs23, "0 e", "v"))
    identity = ReducedWord("v", "v", (), 0)
    assert not witness_service.verify_filling(bs23, "v", [target, target], [identity, identity])


def test_trivial_subequivalence_is_valid(bs23):
    piece = parse_cylinder(bs23, "1 e", "v")
    witness = SubequivalenceWitness(
        source=as_union(bs23, piece),
        target=full_boundary("v"),
        pieces=((piece, ReducedWord("v", "v", (), 0)),),
    )
    assert witness_service.verify_subequivalence(bs23, witness).valid


def test_overlapping_images_fail_disjointness(bs23):
    first = parse_cylinder(bs23, "0 e", "v")
    second = parse_cylinder(bs23, "1 e", "v")
    witness = SubequivalenceWitness(
        source=union(bs23, as_union(bs23, first), as_union(bs23, second)),
        target=full_boundary("v"),
        pieces=(
            (first, ReducedWord("v", "v", (), 0)),
            (second, ReducedWord("v", "v", (), -1)),
        ),
    )
    check = witness_service.verify_subequivalence(bs23, witness)
    assert not check.valid
    assert check.failure == "disjointness"
    assert format_cylinder(bs23, check.locus) == "Z(0 e)"


def test_missing_piece_fails_cover(bs23):
    piece = parse_cylinder(bs23, "0 e", "v")
    witness = SubequivalenceWitness(
        source=full_boundary("v"),
        target=full_boundary("v"),
        pieces=((piece, ReducedWord("v", "v", (), 0)),),
    )
    check = witness_service.verify_subequivalence(bs23, witness)
    assert check.failure == "cover"
    assert format_cylinder(bs23, check.locus) == "Z(1 e)"


def test_escaping_image_fails_containment(bs23):
    piece = parse_cylinder(bs23, "1 e", "v")
    witness = SubequivalenceWitness(
        source=as_union(bs23, piece),
        target=as_union(bs23, parse_cylinder(bs23, "0 e", "v")),
        pieces=((piece, ReducedWord("v", "v", (), 0)),),
    )
    check = witness_service.verify_subequivalence(bs23, witness)
    assert check.failure == "containment"


def test_constructed_subequivalence_verifies(bs23):
    mu = mu_of(bs23, "0 e")
    source = as_union(bs23, parse_cylinder(bs23, "1 ē", "v"))
    target = as_union(bs23, parse_cylinder(bs23, "0 e 0 e", "v"))
    witness = witness_service.construct_subequivalence_witness(bs23, mu, source, target)
    assert witness_service.verify_subequivalence(bs23, witness).valid


def test_paradoxical_decomposition_of_the_boundary(bs23):
    mu = mu_of(bs23, "0 e")
    witness = witness_service.construct_paradoxical_witness(
        bs23, mu, full_boundary("v"), as_union(bs23, parse_cylinder(bs23, "0 e", "v"))
    )
    assert witness_service.verify_paradoxical(bs23, witness).valid
    assert format_union(bs23, witness.first.target) == "Z(0 e 0 e)"
    assert format_union(bs23, witness.second.target) == "Z(0 e 1 e)"


def test_empty_target_is_refused(bs23):
    with pytest.raises(HypothesisFailedError):
        witness_service.construct_subequivalence_witness(
            bs23, mu_of(bs23, "0 e"), full_boundary("v"), CylinderUnion(base="v")
        )


def test_north_south_in_bs_2_3(bs23):
    verdict = witness_service.verify_north_south(bs23, mu_of(bs23, "0 e"), depth=2)
    assert verdict.verified
    assert verdict.power == 3
    assert format_cylinder(bs23, verdict.attracting) == "Z(0 e 0 e)"
    assert format_cylinder(bs23, verdict.repelling) == "Z(0 ē 0 ē)"


def test_north_south_on_a_finite_boundary(bs11):
    verdict = witness_service.verify_north_south(bs11, mu_of(bs11, "0 e"), depth=2)
    assert verdict.verified
    assert verdict.power == 1


def test_north_south_bound(bs23):
    with pytest.raises(BoundExceededError):
        witness_service.verify_north_south(bs23, mu_of(bs23, "0 e"), depth=2, power_bound=2)


def test_axis_cylinders_of_a_longer_path(two_circle):
    mu = mu_of(two_circle, "0 e1 0 e2", "v1")
    assert format_cylinder(two_circle, witness_service.axis_cylinder(two_circle, mu, 1, 3)) == "Z(0 e1 0 e2 0 e1)"
    assert witness_service.axis_cylinder(two_circle, mu, -1, 0) == Cylinder("v1")


def test_whole_boundary_target_is_covered_by_the_identity(bs23):
    mu = mu_of(bs23, "0 e")
    witness = witness_service.construct_filling_witness(bs23, mu, Cylinder("v"), Cylinder("v"))
    assert [format_word(bs23, h) for h in witness.elements] == ["0", "0"]
    assert witness.power == 0
    assert witness.candidates_examined == 0
    assert witness_service.verify_filling_witness(bs23, witness)
    mixed = witness_service.construct_filling_witness(bs23, mu, parse_cylinder(bs23, "0 e", "v"), Cylinder("v"))
    assert witness_service.verify_filling_witness(bs23, mixed)


def test_searches_share_one_candidate_budget(bs23):
    budget = _Budget(10, 2)
    cylinder = parse_cylinder(bs23, "0 e", "v")
    nowhere = CylinderUnion(base="v")
    for _ in range(3):
        assert witness_service._least_loop_into(bs23, "v", cylinder, nowhere, budget) is None
    assert budget.examined == 10
