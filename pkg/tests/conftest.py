import random

import pytest
from hypothesis import strategies as st

from inducedforest.graph import Graph, graph_from_edges


@st.composite
def graphs(draw, max_n=10, min_n=0):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for v in range(n) for u in range(v)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return graph_from_edges(n, [p for p, k in zip(pairs, keep) if k])


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return graph_from_edges(n, [(u, v) for v in range(n) for u in range(v) if rng.random() < p])


@pytest.fixture
def rng():
    return random.Random(20240601)


_ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def record():
    """Report one PASS/FAIL line for an acceptance criterion."""

    def add(number: int, failures: list, detail: str) -> None:
        line = f"criterion {number}: {'FAIL' if failures else 'PASS'}  {detail}"
        if failures:
            line += f"  first failures: {failures[:3]}"
        _ACCEPTANCE[number] = line
        print(line)

    return add


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for number in sorted(_ACCEPTANCE):
            terminalreporter.write_line(_ACCEPTANCE[number])
