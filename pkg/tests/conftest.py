import pytest
from hypothesis import settings, strategies as st

from ribbonpoly.generate import named_graphs, random_ribbon_graph
from ribbonpoly.virtual import random_diagram

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def ribbon_graphs(draw, min_edges=0, max_edges=4, connected=True, signed=True):
    rng = draw(st.randoms(use_true_random=False))
    n = draw(st.integers(min_edges, max_edges))
    return random_ribbon_graph(rng, n, signed=signed, connected=connected)


@st.composite
def diagrams(draw, max_crossings=4, connected=False):
    rng = draw(st.randoms(use_true_random=False))
    n = draw(st.integers(1, max_crossings))
    return random_diagram(rng, n, connected=connected)


@pytest.fixture(scope="session")
def named():
    return named_graphs()


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[key])
