from __future__ import annotations

from pathlib import Path

import pytest

from primegraph import catalog, spectra
from primegraph.catalog import parse_group_token
from primegraph.odpipeline import L4_Q

DATA = Path(__file__).parent / "data"

# compact node sets of the eight L4(q) graphs, characteristic kept apart
COMPACT_NODES = {
    19: [(2, 5), (3,), (19,), (127,), (181,)],
    23: [(2, 3), (5, 53), (7, 79), (11,), (23,)],
    25: [(2, 3), (5,), (7, 31), (13,), (313,)],
    27: [(2, 7), (3,), (5, 73), (13,), (757,)],
    29: [(2,), (3, 5), (7,), (13, 67), (29,), (421,)],
    31: [(2,), (3, 5), (13, 37), (31,), (331,)],
    32: [(2,), (3, 11), (5, 41), (7, 151), (31,)],
    37: [(2,), (3,), (5, 137), (7, 67), (19,), (37,)],
}


def l4_graph(q: int):
    return spectra.prime_graph(parse_group_token(f"L4({q})"))


@pytest.fixture(scope="session")
def l4_graphs():
    return {q: l4_graph(q) for q in L4_Q}


def derived_graphs():
    """Every graph the library derives for the groups it has exact data on."""
    from primegraph.cli import bounds_graphs

    return bounds_graphs()


@pytest.fixture(scope="session")
def all_graphs():
    return derived_graphs()


@pytest.fixture
def isolated_data(tmp_path):
    """Point the dataset directory somewhere empty; restore afterwards."""
    catalog.set_data_dir(tmp_path)
    yield tmp_path
    catalog.set_data_dir(None)


def pytest_terminal_summary(terminalreporter):
    try:
        from tests.test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS.values():
            terminalreporter.write_line(line)
