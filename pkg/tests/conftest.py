import warnings
from pathlib import Path

import pytest

from src.services.document_service import LoadedInstance, parse_input

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_path(name: str) -> str:
    return str(FIXTURES / f"{name}.json")


def load(name: str, base: str = None) -> LoadedInstance:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return parse_input((FIXTURES / f"{name}.json").read_text(encoding="utf-8"), base=base)


def load_graph(name: str):
    return load(name).graph_of_groups


@pytest.fixture
def bs23():
    return load_graph("bs_2_3")


@pytest.fixture
def bs11():
    return load_graph("bs_1_1")


@pytest.fixture
def bs13():
    return load_graph("bs_1_3")


@pytest.fixture
def two_circle():
    return load_graph("two_circle")


@pytest.fixture
def wedge():
    return load_graph("wedge")
