import os

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from trace_lab.hypergraph import Hypergraph

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE_LINES = {}


@st.composite
def hypergraphs(draw, max_n=7, max_m=20, uniform=False):
    n = draw(st.integers(1, max_n))
    if uniform:
        k = draw(st.integers(1, n))
        edge = st.sets(st.integers(0, n - 1), min_size=k, max_size=k)
    else:
        k = None
        edge = st.sets(st.integers(0, n - 1))
    edges = draw(st.lists(edge, max_size=max_m))
    return Hypergraph(n, edges, uniformity=k if edges else None)


@st.composite
def kgraphs(draw, max_n=7, max_m=20):
    n = draw(st.integers(1, max_n))
    k = draw(st.integers(1, n))
    edges = draw(st.lists(st.sets(st.integers(0, n - 1), min_size=k, max_size=k),
                          min_size=1, max_size=max_m))
    return Hypergraph(n, edges, uniformity=k), k


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])


@pytest.fixture
def acceptance_line():
    def put(number, ok, detail):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}"
        ACCEPTANCE_LINES[number] = line
        print(line)
        return ok
    return put
