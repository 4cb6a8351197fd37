import sys
from pathlib import Path

import pytest

from gmle.cli import read_graph, read_matrix, read_csv

DATA = Path(__file__).parent / "data"
sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(scope="session")
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def cycle4():
    return read_graph(DATA / "cycle4.json")


@pytest.fixture(scope="session")
def mixed():
    return read_graph(DATA / "mixed.json")


@pytest.fixture(scope="session")
def multiedge():
    return read_graph(DATA / "multiedge.json")


@pytest.fixture(scope="session")
def cycle4_S():
    return read_matrix(DATA / "cycle4_S.json")


@pytest.fixture(scope="session")
def mixed_S():
    return read_matrix(DATA / "mixed_S.json")


@pytest.fixture(scope="session")
def cycle4_U():
    return read_csv(DATA / "cycle4_U.csv")


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(RESULTS):
        ok, detail = RESULTS[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {detail}")
