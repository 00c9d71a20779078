import io

import pytest

from src.main import run
from src.services.report_service import parse_report
from src.services.witness_service import witness_service
from tests.conftest import fixture_path


def invoke(*argv: str, stdin: str = "") -> tuple[int, str]:
    out = io.StringIO()
    code = run(list(argv), stdin=io.StringIO(stdin), stdout=out)
    return code, out.getvalue()


def test_reduce_prints_the_normal_form():
    assert invoke("reduce", fixture_path("bs_2_3"), "--word", "5 e 0") == (0, "1 e 6\n")


def test_reduce_reads_standard_input():
    with open(fixture_path("bs_2_3"), encoding="utf-8") as f:
        document = f.read()
    assert invoke("reduce", "-", "--word", "0 e 0 ē 7", stdin=document) == (0, "7\n")


def test_word_commands():
    path = fixture_path("bs_2_3")
    assert invoke("invert", path, "--word", "0 e 0") == (0, "0 ē 0\n")
    assert invoke("multiply", path, "--left", "0 e 0", "--right", "0 ē 0") == (0, "0\n")
    assert invoke("modular", path, "--word", "0 e") == (0, "3/2\n")
    assert invoke("image", path, "--element", "0 ē 0", "--cylinder", "0 e")[1] == (
        "Z(0 e) ∪ Z(1 e) ∪ Z(1 ē) ∪ Z(2 ē)\n"
    )


def test_act_prints_an_eventually_periodic_point():
    code, out = invoke("act", fixture_path("bs_2_3"), "--element", "2", "--point", "(0 e)")
    assert code == 0
    assert out.splitlines()[0] == "0 e (1 e)"
    assert "W-EVENTUALLY-PERIODIC" in out


def test_non_periodic_carry_is_inconclusive():
    code, out = invoke("act", fixture_path("bs_2_3"), "--element", "4", "--point", "(0 e)")
    assert code == 2
    assert "non-periodic-carry" in out
    assert "W-INCONCLUSIVE-SEARCH" in out


@pytest.mark.parametrize(
    "name,code",
    [("bs_2_3", 0), ("wedge", 0), ("bs_1_3", 1), ("bs_2_2", 1), ("bs_1_1", 1)],
)
def test_classify_gbs_exit_codes(name, code):
    assert invoke("classify-gbs", fixture_path(name))[0] == code


def test_classify_gbs_text_report():
    code, out = invoke("classify-gbs", fixture_path("bs_2_3"))
    assert code == 0
    assert "  minimal: true (minimal)\n" in out
    assert "  repeatable-path: true (0 e)\n" in out
    assert "verdict: strong boundary action; topologically free; Kirchberg algebra; C*-simple\n" in out


def test_classify_gbs_refuses_other_backends():
    code, out = invoke("classify-gbs", fixture_path("free_product_2_3"))
    assert code == 3
    assert "not-gbs" in out


def test_classify_tree_free_product():
    code, out = invoke("classify-tree", fixture_path("free_product_2_3"))
    assert code == 0
    assert "thm-E1" in out


def test_json_reports_round_trip():
    code, out = invoke("classify-gbs", fixture_path("bs_2_3"), "--format", "json")
    report = parse_report(out)
    assert code == report.exit_code == 0
    assert report.instance == "BS(2,3)"
    assert report.hypothesis("not-unimodular").value is True


def test_output_is_deterministic():
    for argv in (
        ("classify-gbs", fixture_path("wedge")),
        ("repeatable", fixture_path("two_circle"), "--max-len", "3"),
        ("classify-nevo-sageev", fixture_path("prism_racg")),
    ):
        assert invoke(*argv) == invoke(*argv)


def test_tree_commands():
    path = fixture_path("bs_2_3")
    code, out = invoke("tree", path, "--depth", "1")
    assert code == 0
    assert out.splitlines() == ["depth 1: 5 paths", "0 e", "1 e", "0 ē", "1 ē", "2 ē"]
    assert invoke("boundary-infinite", path)[0] == 0
    assert "level sizes: 1 5 20 80" in invoke("boundary-infinite", path)[1]
    assert invoke("boundary-infinite", fixture_path("bs_1_1"))[0] == 1
    assert invoke("minimality", fixture_path("bs_1_3"))[0] == 1
    assert invoke("betti", fixture_path("wedge"))[1].splitlines()[0] == "b1 = 2"
    assert invoke("unimodular", fixture_path("two_circle"))[0] == 0
    assert invoke("unimodular", fixture_path("bs_2_3"))[0] == 1


def test_repeatable_marks_flagged_paths():
    code, out = invoke("repeatable", fixture_path("bs_2_3"), "--max-len", "1")
    assert code == 0
    assert out.splitlines()[:2] == ["0 e *", "1 e *"]
    assert invoke("repeatable", fixture_path("bs_1_1"), "--max-len", "2")[0] == 1


def test_witness_and_north_south_commands():
    path = fixture_path("bs_2_3")
    code, out = invoke("witness-2filling", path, "--o1", "0 e", "--o2", "0 ē")
    assert code == 0
    assert "h2 = 0 ē 1 e 0 e 1" in out
    code, out = invoke("northsouth", path, "--element", "0 e 0")
    assert code == 0
    assert out.splitlines()[0] == "m = 3"
    code, out = invoke("northsouth", fixture_path("bs_1_1"), "--element", "0 e 0")
    assert code == 0
    assert "W-FINITE-BOUNDARY" in out


def test_witness_search_bound_is_inconclusive():
    code, out = invoke(
        "witness-2filling", fixture_path("bs_2_3"), "--o1", "1 ē 1 e 1 ē", "--o2", "2 ē 1 e 1 ē", "--bound", "6"
    )
    assert code == 2
    assert "W-INCONCLUSIVE-SEARCH" in out


def test_subequivalence_command():
    path = fixture_path("bs_2_3")
    code, out = invoke("subequivalence", path, "--source", "1 ē", "--target", "0 e 0 e")
    assert code == 0
    assert "  subequivalence-verified: true\n" in out
    code, _ = invoke("subequivalence", fixture_path("bs_1_3"), "--target", "0 e")
    assert code == 1


def test_defining_graph_commands():
    code, out = invoke("classify-nevo-sageev", fixture_path("square_racg"))
    assert code == 0
    assert "structure: ⊗²(C({0̆,1̆})⋊D∞)" in out
    assert invoke("classify-nevo-sageev", fixture_path("star_racg"))[0] == 1
    assert invoke("classify-visual", fixture_path("pentagon_racg"))[0] == 0
    code, out = invoke("factors", fixture_path("square_racg"))
    assert out.splitlines()[:3] == ["{a, c}: euclidean-dinf", "{b, d}: euclidean-dinf", "n = 2"]
    code, out = invoke("doubling", fixture_path("pair_raag"))
    assert out.splitlines()[0] == "vertices: (u,0) (u,1) (v,0) (v,1)"
    assert invoke("doubling", fixture_path("edge_raag"))[0] == 3


def test_commands_check_the_document_kind():
    code, out = invoke("reduce", fixture_path("pentagon_racg"), "--word", "0")
    assert code == 3
    assert "error [schema] at kind" in out


@pytest.mark.parametrize(
    "argv,code_name",
    [
        (("frobnicate", "x.json"), "unknown-command"),
        (("reduce", "x.json", "--wrd", "1"), "flag"),
        (("reduce",), "flag"),
        ((), "flag"),
        (("reduce", "missing.json", "--word", "1"), "schema"),
        (("classify-gbs", "BS_ZERO"), "schema"),
        (("reduce", "BS23", "--word", "0 q 1"), "word-parse"),
        (("classify-gbs", "BS23", "--base", "w"), "resolve"),
        (("classify-gbs", "BS23", "--format", "yaml"), "flag"),
        (("tree", "BS23", "--depth", "-1"), "flag"),
        (("tree", "BS23", "--depth", "two"), "flag"),
        (("repeatable", "BS23", "--max-len", "0"), "flag"),
        (("northsouth", "BS23", "--element", "0 e 0", "--depth", "-2"), "flag"),
        (("witness-2filling", "BS23", "--o1", "0 e", "--o2", "0 ē", "--bound", "0"), "flag"),
    ],
)
def test_input_errors_exit_3(argv, code_name):
    replacements = {"BS23": fixture_path("bs_2_3"), "BS_ZERO": fixture_path("bs_2_3_zero")}
    argv = tuple(replacements.get(a, a) for a in argv)
    code, out = invoke(*argv)
    assert code == 3
    assert f"error [{code_name}]" in out


def test_unverified_witness_is_reported_not_raised(monkeypatch):
    monkeypatch.setattr(witness_service, "verify_filling_witness", lambda g, witness: False)
    code, out = invoke("witness-2filling", fixture_path("bs_2_3"), "--o1", "0 e", "--o2", "0 ē")
    assert code == 2
    assert "error [witness-check-failed]" in out
