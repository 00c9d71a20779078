import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.core.exceptions import FlagError, NonPeriodicCarryError, SingularInputError, WordParseError
from src.models.boundary import Cylinder
from src.models.words import GWord, ReducedWord
from src.services.boundary_service import (
    act_on_point,
    as_union,
    complement,
    difference,
    enumerate_level,
    equals,
    first_point,
    format_point,
    format_union,
    full_boundary,
    image_of_cylinder,
    image_of_union,
    intersection,
    is_subset,
    normalize,
    parse_cylinder,
    parse_point,
    periodic_point,
    point_in,
    union,
)
from src.services.dynamics_service import find_repeatable
from src.services.graph_service import build_free_product
from src.services.normal_form_service import format_path, invert, is_reduced_path, multiply, parse_loop, reduce
from tests.conftest import load_graph

BS23 = load_graph("bs_2_3")
LEVEL2 = enumerate_level(BS23, "v", 2).paths


def cyl(g, text: str):
    return as_union(g, parse_cylinder(g, text, g.default_base))


def test_level_one_in_canonical_order(bs23):
    level = enumerate_level(bs23, "v", 1)
    assert [format_path(bs23, p) for p in level.paths] == ["0 e", "1 e", "0 ē", "1 ē", "2 ē"]


def test_children_skip_the_identity_backtrack(bs23):
    level = enumerate_level(bs23, "v", 2)
    after_reverse = [format_path(bs23, p) for p in level.paths if format_path(bs23, p).startswith("0 ē")]
    assert after_reverse == ["0 ē 1 e", "0 ē 0 ē", "0 ē 1 ē", "0 ē 2 ē"]
    assert len(level) == 20


def test_levels_refuse_singular_graphs():
    with pytest.warns(UserWarning):
        g = build_free_product({"u": 1, "w": 3}, [("e", "u", "w")])
    with pytest.raises(SingularInputError):
        enumerate_level(g, "u", 1)


def test_complement_of_a_depth_one_cylinder(bs23):
    assert format_union(bs23, complement(bs23, cyl(bs23, "0 e"))) == "Z(1 e) ∪ Z(0 ē) ∪ Z(1 ē) ∪ Z(2 ē)"


def test_normalize_merges_complete_sibling_sets(bs23):
    level = enumerate_level(bs23, "v", 1).paths
    assert normalize(bs23, "v", level) == full_boundary("v")
    children = [p for p in enumerate_level(bs23, "v", 2).paths if p[0] == level[0]]
    assert format_union(bs23, normalize(bs23, "v", children)) == "Z(0 e)"


def test_empty_and_full_sets_print(bs23):
    assert format_union(bs23, full_boundary("v")) == "Z(*)"
    empty = complement(bs23, full_boundary("v"))
    assert empty.is_empty
    assert format_union(bs23, empty) == "∅"


def test_difference_and_subset(bs23):
    a = union(bs23, cyl(bs23, "0 e"), cyl(bs23, "1 ē"))
    assert is_subset(bs23, cyl(bs23, "0 e 1 e"), a)
    assert not is_subset(bs23, cyl(bs23, "2 ē"), a)
    assert equals(bs23, difference(bs23, a, cyl(bs23, "1 ē")), cyl(bs23, "0 e"))


paths = st.lists(st.sampled_from(LEVEL2), max_size=8)


@settings(max_examples=60, deadline=None)
@given(paths, paths)
def test_boolean_algebra_laws(first, second):
    a = normalize(BS23, "v", first)
    b = normalize(BS23, "v", second)
    assert union(BS23, a, complement(BS23, a)) == full_boundary("v")
    assert intersection(BS23, a, complement(BS23, a)).is_empty
    assert complement(BS23, complement(BS23, a)) == a
    assert complement(BS23, union(BS23, a, b)) == intersection(
        BS23, complement(BS23, a), complement(BS23, b)
    )


@pytest.mark.parametrize(
    "element,point,expected",
    [
        ("0 ē 0", "(0 e)", "(0 e)"),
        ("1 e 0", "(0 e)", "1 e (0 e)"),
        ("1", "(0 e)", "1 e (0 e)"),
        ("2", "(0 e)", "0 e (1 e)"),
    ],
)
def test_act_on_periodic_points(bs23, element, point, expected):
    gamma = parse_loop(bs23, element, "v")
    image = act_on_point(bs23, gamma, parse_point(bs23, point, "v"))
    assert format_point(bs23, image) == expected


def test_act_detects_non_periodic_carries(bs23):
    gamma = parse_loop(bs23, "4", "v")
    with pytest.raises(NonPeriodicCarryError):
        act_on_point(bs23, gamma, parse_point(bs23, "(0 e)", "v"))


def test_points_are_canonical(bs23):
    point = parse_point(bs23, "0 e (0 e 0 e)", "v")
    assert format_point(bs23, point) == "(0 e)"
    with pytest.raises(WordParseError):
        parse_point(bs23, "0 e 0 ē", "v")


def test_image_of_cylinder_translates_and_refines(bs23):
    gamma = parse_loop(bs23, "1 e 0", "v")
    image = image_of_cylinder(bs23, gamma, parse_cylinder(bs23, "0 e", "v"))
    assert format_union(bs23, image) == "Z(1 e 0 e)"
    back = parse_loop(bs23, "0 ē 0", "v")
    image = image_of_cylinder(bs23, back, parse_cylinder(bs23, "0 e", "v"))
    assert image == complement(bs23, cyl(bs23, "0 ē"))


def test_image_of_the_full_boundary_is_full(bs23):
    gamma = parse_loop(bs23, "1 e 2 ē 0", "v")
    assert image_of_cylinder(bs23, gamma, Cylinder("v")) == full_boundary("v")


def test_image_commutes_with_points(bs23):
    gamma = parse_loop(bs23, "1 e 0", "v")
    point = parse_point(bs23, "(0 e)", "v")
    image = image_of_cylinder(bs23, gamma, parse_cylinder(bs23, "0 e", "v"))
    assert format_union(bs23, image) == "Z(1 e 0 e)"
    assert point_in(act_on_point(bs23, gamma, point), image)


def test_first_point_lies_in_its_cylinder(bs23):
    cylinder = cyl(bs23, "1 ē").cylinders[0]
    point = first_point(bs23, cylinder)
    assert point is not None
    assert point_in(point, as_union(bs23, cylinder))


def test_identity_token_word_is_reduced_word(bs23):
    word = ReducedWord("v", "v", (), 0)
    assert image_of_cylinder(bs23, word, Cylinder("v")) == full_boundary("v")


def test_negative_depth_is_refused(bs23):
    with pytest.raises(FlagError):
        enumerate_level(bs23, "v", -1)


def loops(g, base: str, depth: int) -> list:
    return [
        path
        for d in range(depth + 1)
        for path in enumerate_level(g, base, d).paths
        if not path or g.graph.source(path[-1].edge) == base
    ]


def tail_tokens(g, base: str) -> list:
    tokens = []
    for token in g.transversal(g.graph.incoming(base)[0].name):
        for t in (token, g.backend.invert(base, token)):
            if t not in tokens:
                tokens.append(t)
    return tokens


def elements(g, base: str):
    return st.builds(
        lambda path, tail: reduce(g, GWord(range=base, source=base, letters=path, tail=tail)),
        st.sampled_from(loops(g, base, 3)),
        st.sampled_from(tail_tokens(g, base)),
    )


def cylinders(g, base: str):
    return st.sampled_from(
        [Cylinder(base, path) for d in range(4) for path in enumerate_level(g, base, d).paths]
    )


ACTION_CASES = {
    "bs_2_3": (BS23, "v"),
    "two_circle": (load_graph("two_circle"), "v1"),
    "free_product_3_3": (load_graph("free_product_3_3"), "u"),
}


@pytest.mark.parametrize("name", sorted(ACTION_CASES))
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_images_compose(name, data):
    g, base = ACTION_CASES[name]
    first = data.draw(elements(g, base))
    second = data.draw(elements(g, base))
    c = data.draw(cylinders(g, base))
    step = image_of_union(g, first, image_of_cylinder(g, second, c))
    assert equals(g, step, image_of_cylinder(g, multiply(g, first, second), c))


@pytest.mark.parametrize("name", sorted(ACTION_CASES))
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_inverse_image_restores_the_cylinder(name, data):
    g, base = ACTION_CASES[name]
    gamma = data.draw(elements(g, base))
    c = data.draw(cylinders(g, base))
    back = image_of_union(g, invert(g, gamma), image_of_cylinder(g, gamma, c))
    assert equals(g, back, as_union(g, c))


def periodic_points(g, base: str) -> list:
    points = []
    for mu in find_repeatable(g, 2, base):
        for prefix in loops(g, base, 2):
            if is_reduced_path(g, base, prefix + mu.letters + mu.letters):
                point = periodic_point(g, base, mu.letters, prefix)
                if point not in points:
                    points.append(point)
    return points


POINT_CASES = {
    "bs_2_3": (BS23, "v"),
    "free_product_3_3": (load_graph("free_product_3_3"), "u"),
    "amalgam_z4_z2": (load_graph("amalgam_z4_z2"), "u"),
}


@pytest.mark.parametrize("name", sorted(POINT_CASES))
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_acting_back_restores_the_point(name, data):
    g, base = POINT_CASES[name]
    gamma = data.draw(elements(g, base))
    point = data.draw(st.sampled_from(periodic_points(g, base)))
    try:
        moved = act_on_point(g, invert(g, gamma), point)
        back = act_on_point(g, gamma, moved)
    except NonPeriodicCarryError:
        return
    assert back == point
