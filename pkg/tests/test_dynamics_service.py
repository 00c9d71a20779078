from fractions import Fraction

import pytest

from src.core.exceptions import HypothesisFailedError, NotGBSError
from src.services.boundary_service import enumerate_level, format_point
from src.services.dynamics_service import (
    as_repeatable,
    boundary_infinite,
    build_turn_graph,
    check_minimality,
    check_unimodular,
    find_flagged_repeatable,
    find_repeatable,
    is_repeatable,
    level_sizes,
)
from src.services.normal_form_service import format_path, format_word, parse_path
from tests.conftest import load_graph

CORPUS = [
    ("bs_1_1", 8),
    ("bs_1_3", 8),
    ("bs_2_2", 8),
    ("bs_2_3", 7),
    ("bs_3_3", 6),
    ("two_circle", 6),
    ("three_circle", 8),
    ("wedge", 5),
    ("free_product_2_3", 8),
    ("free_product_3_3", 8),
    ("amalgam_z4_z2", 8),
]


def transition_sequences(g, base: str, depth: int) -> set[tuple[str, ...]]:
    turns = build_turn_graph(g)
    level = {(edge.name,) for edge in g.graph.incoming(base)}
    for _ in range(depth - 1):
        level = {seq + (f,) for seq in level for f in turns.successors(seq[-1])}
    return level


@pytest.mark.parametrize("name,depth", CORPUS)
def test_turn_graph_matches_reduced_paths(name, depth):
    g = load_graph(name)
    base = g.default_base
    for d in range(1, depth + 1):
        paths = enumerate_level(g, base, d).paths
        edge_sequences = {tuple(letter.edge for letter in path) for path in paths}
        assert edge_sequences == transition_sequences(g, base, d)
        assert level_sizes(g, base, d)[d] == len(paths)


@pytest.mark.parametrize("name,_", CORPUS)
def test_boundary_infinite_agrees_with_level_growth(name, _):
    g = load_graph(name)
    base = g.default_base
    states = len(g.graph.edges)
    sizes = level_sizes(g, base, 2 * states + 2)
    assert boundary_infinite(g, base).infinite == (sizes[2 * states + 2] > sizes[states + 1])


def test_level_sizes(bs23, bs11):
    assert level_sizes(bs23, "v", 3) == [1, 5, 20, 80]
    assert level_sizes(bs11, "v", 3) == [1, 2, 2, 2]


def test_bs_1_3_turn_graph():
    turns = build_turn_graph(load_graph("bs_1_3"))
    assert turns.weights == {("e", "e"): 1, ("e", "ē"): 2, ("ē", "ē"): 3}


def test_free_product_turns_alternate():
    turns = build_turn_graph(load_graph("free_product_3_3"))
    assert turns.weights == {("e", "ē"): 2, ("ē", "e"): 2}


@pytest.mark.parametrize(
    "name,minimal",
    [
        ("bs_1_1", False),
        ("bs_1_3", False),
        ("bs_2_2", True),
        ("bs_2_3", True),
        ("two_circle", True),
        ("wedge", True),
        ("free_product_2_3", True),
    ],
)
def test_minimality(name, minimal):
    assert check_minimality(load_graph(name)).minimal is minimal


def test_non_minimal_certificate(bs13):
    verdict = check_minimality(bs13)
    assert verdict.offending_edge == "ē"
    assert verdict.can_flow_to["ē"] == ("ē",)
    assert verdict.trapped_cycle == ("e",)
    assert format_point(bs13, verdict.witness) == "(0 e)"


@pytest.mark.parametrize("name", ["bs_1_1", "bs_1_3", "bs_2_2", "bs_2_3", "two_circle", "free_product_2_3"])
def test_minimality_against_bounded_paths(name):
    """Minimal iff every long enough path meets the flow of every edge after its first letter."""
    g = load_graph(name)
    base = g.default_base
    verdict = check_minimality(g)
    depth = len(g.graph.edges) + 2
    paths = enumerate_level(g, base, depth).paths
    avoiding = any(
        all(letter.edge not in verdict.can_flow_to[e] for letter in path[1:])
        for e in verdict.can_flow_to
        for path in paths
    )
    assert verdict.minimal is not avoiding


def test_repeatable_paths(bs23, bs11):
    assert is_repeatable(bs23, parse_path(bs23, "0 e", "v"))
    assert not is_repeatable(bs23, parse_path(bs23, "0 e 1 ē", "v"))
    found = find_repeatable(bs23, 1)
    assert [(format_path(bs23, mu.letters), mu.flagged) for mu in found] == [
        ("0 e", True),
        ("1 e", True),
        ("0 ē", True),
        ("1 ē", True),
        ("2 ē", True),
    ]
    assert all(not mu.flagged for mu in find_repeatable(bs11, 2))
    assert find_flagged_repeatable(bs11) is None


def test_least_flagged_repeatable_in_wedge(wedge):
    mu = find_flagged_repeatable(wedge, "v1")
    assert format_path(wedge, mu.letters) == "0 e1 0 e2"


def test_flagged_repeatable_in_free_product():
    g = load_graph("free_product_2_3")
    mu = find_flagged_repeatable(g, "u")
    assert format_path(g, mu.letters) == "1 ē 1 e"


def test_as_repeatable_refuses_non_repeatable_paths(bs23):
    with pytest.raises(HypothesisFailedError):
        as_repeatable(bs23, parse_path(bs23, "0 e 1 ē", "v"))


def test_unimodularity(bs23, two_circle, wedge):
    verdict = check_unimodular(bs23)
    assert not verdict.unimodular
    assert [(format_word(bs23, c.loop), c.q) for c in verdict.cycles] == [("0 e 0", Fraction(3, 2))]

    verdict = check_unimodular(two_circle)
    assert verdict.unimodular
    assert [(format_word(two_circle, c.loop), c.q) for c in verdict.cycles] == [("0 e1 0 e2 0", 1)]

    verdict = check_unimodular(wedge)
    assert not verdict.unimodular
    assert [c.q for c in verdict.cycles] == [1, Fraction(9, 4)]


@pytest.mark.parametrize("name", ["bs_2_2", "bs_3_3", "three_circle"])
def test_unimodular_graphs(name):
    assert check_unimodular(load_graph(name)).unimodular


@pytest.mark.parametrize("name,flipped", [("bs_2_3", "bs_3_2"), ("two_circle", "two_circle_reversed")])
def test_unimodularity_ignores_orientation(name, flipped):
    assert check_unimodular(load_graph(name)).unimodular == check_unimodular(load_graph(flipped)).unimodular


def test_unimodularity_needs_gbs():
    with pytest.raises(NotGBSError):
        check_unimodular(load_graph("free_product_2_3"))
