import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.backends import FiniteGroup
from src.core.exceptions import SchemaError
from tests.conftest import load_graph

BS23 = load_graph("bs_2_3")


@given(st.integers(min_value=-10**6, max_value=10**6))
def test_gbs_split_recombines(g):
    bs = BS23
    for edge in ("e", "ē"):
        s, h = bs.backend.split(edge, g)
        assert s in bs.backend.transversal(edge)
        assert bs.backend.recombine(edge, s, h) == g


def test_gbs_transversal_uses_absolute_index():
    g = load_graph("bs_2_3")
    assert g.transversal("e") == (0, 1)
    assert g.transversal("ē") == (0, 1, 2)


def test_gbs_split_and_carry():
    backend = load_graph("bs_2_3").backend
    assert backend.split("e", 5) == (1, 2)
    assert backend.carry("e", 2) == 6
    assert backend.split("ē", -1) == (2, -1)


def test_trivial_edge_backend_never_carries():
    backend = load_graph("free_product_2_3").backend
    assert backend.transversal("e") == (0, 1, 2)
    assert backend.transversal("ē") == (0, 1)
    assert backend.split("e", 2) == (2, 0)
    assert backend.carry("e", 0) == 0
    assert backend.compose("w", 2, 2) == 1


def test_finite_table_cosets_start_at_identity():
    backend = load_graph("amalgam_z4_z2").backend
    assert backend.transversal("e") == ("0", "1")
    assert backend.split("e", "3") == ("1", "1")
    assert backend.split("e", "2") == ("0", "1")
    assert backend.carry("e", "1") == "2"
    assert backend.rank("e", "1") == 1


def test_finite_group_from_rows_checks_table():
    group = FiniteGroup.from_rows(["0", "1"], [["0", "1"], ["1", "0"]], locus="z2")
    assert group.identity == "0"
    assert group.inverses["1"] == "1"
    with pytest.raises(SchemaError):
        FiniteGroup.from_rows(["0", "1"], [["0", "1"]], locus="bad")
    with pytest.raises(SchemaError):
        FiniteGroup.from_rows(["0", "1"], [["0", "2"], ["1", "0"]], locus="bad")
