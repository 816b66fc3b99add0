"""Shared fixtures: the bundled instance files and the slow-suite switch."""

import pytest

from pmvc.config import FIXTURES_PATH
from pmvc.constraints import parse_constraint
from pmvc.graph_core import parse_graph
from pmvc.pfaffian import parse_embedding


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run the full-size corpora")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-size statistical corpora (enable with --runslow)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


def fixture_text(name: str) -> str:
    return (FIXTURES_PATH / name).read_text(encoding="utf-8")


@pytest.fixture
def fixture_path():
    return lambda name: str(FIXTURES_PATH / name)


@pytest.fixture
def load_graph():
    return lambda name: parse_graph(fixture_text(f"{name}.graph.json"))


@pytest.fixture
def load_constraint():
    return lambda name: parse_constraint(fixture_text(f"{name}.constraint.json"))


@pytest.fixture
def load_embedding():
    return lambda name: parse_embedding(fixture_text(f"{name}.embedding.json"))
