from __future__ import annotations

import sys

import pytest

from spfg.graph_core import ForcingGraph, Graph, Instance


@pytest.fixture
def path3() -> Graph:
    # 0 - 1 - 2 ; e0 = (0, 1), e1 = (1, 2)
    return Graph(3, [(0, 1), (1, 2)])


@pytest.fixture
def i1(path3) -> Instance:
    return Instance(path3, ForcingGraph(2), 0, 2, 2)


@pytest.fixture
def i2_graph() -> Graph:
    # s = 0, t = 1; e0 = (0, 1), e1 = (2, 3), e2 = (3, 4)
    return Graph(5, [(0, 1), (2, 3), (3, 4)])


@pytest.fixture
def i2(i2_graph) -> Instance:
    return Instance(i2_graph, ForcingGraph(3, [(1, 2)]), 0, 1, 2)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "ACCEPTANCE_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
