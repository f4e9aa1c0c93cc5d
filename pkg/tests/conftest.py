import random

import pytest
from hypothesis import strategies as st

from chipfire import Engine
from chipfire.graphio import DirectedMultigraph
from chipfire.matcore import random_m_matrix

# L matrices from the worked examples
L_COUNTER = [[3, -4], [-1, 2]]
L_SEVEN = [[5, -2], [-4, 3]]
L_GRAPH = [[3, -1], [-3, 2]]


@pytest.fixture
def counter():
    return Engine.from_L(L_COUNTER)


@pytest.fixture
def seven():
    return Engine.from_L(L_SEVEN)


@pytest.fixture
def graph_engine():
    return Engine.from_L(L_GRAPH)


@pytest.fixture
def example_graph():
    # 1 -> 2 three times, 2 -> 1 once, 2 -> sink once
    return DirectedMultigraph(3, [(1, 2, 3), (2, 1, 1), (2, 3, 1)], sink=3)


@st.composite
def m_matrices(draw, min_n=1, max_n=4, styles=("row", "column", "reject")):
    n = draw(st.integers(min_n, max_n))
    style = draw(st.sampled_from(styles))
    seed = draw(st.integers(0, 2**32))
    return random_m_matrix(random.Random(seed), n, style)


@st.composite
def engines(draw, min_n=1, max_n=4, styles=("row", "column", "reject")):
    return Engine.from_L(draw(m_matrices(min_n, max_n, styles)))


def pytest_addoption(parser):
    parser.addoption("--update-golden", action="store_true",
                     help="rewrite tests/golden/*.json from current CLI output")


@pytest.fixture
def update_golden(request):
    return request.config.getoption("--update-golden")


# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
