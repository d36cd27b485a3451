from itertools import combinations

import pytest
from hypothesis import strategies as st

from rainbowmatch.core import EdgeColoredGraph


def graph(n, *edges):
    return EdgeColoredGraph(n, tuple(edges))


def rainbow(n, pairs):
    return EdgeColoredGraph(n, tuple((u, v, i) for i, (u, v) in enumerate(sorted(pairs))))


def cycle_pairs(n):
    return [(i, (i + 1) % n) for i in range(n)]


@pytest.fixture
def rainbow_triangle():
    return graph(3, (0, 1, 1), (1, 2, 2), (0, 2, 3))


@pytest.fixture
def mono_triangle():
    return graph(3, (0, 1, 0), (1, 2, 0), (0, 2, 0))


@pytest.fixture
def proper_k4():
    # classes {01,23}, {02,13}, {03,12}
    return graph(4, (0, 1, 0), (2, 3, 0), (0, 2, 1), (1, 3, 1), (0, 3, 2), (1, 2, 2))


@pytest.fixture
def alternating_c4():
    return graph(4, (0, 1, 1), (1, 2, 2), (2, 3, 1), (0, 3, 2))


@pytest.fixture
def rainbow_k33():
    return rainbow(6, [(a, b) for a in range(3) for b in range(3, 6)])


@pytest.fixture
def rainbow_c5():
    return rainbow(5, cycle_pairs(5))


@st.composite
def colored_graphs(draw, max_n=7, max_colors=4, min_n=0):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = []
    for keep, (u, v) in zip(mask, pairs):
        if keep:
            edges.append((u, v, draw(st.integers(0, max_colors - 1))))
    return EdgeColoredGraph(n, tuple(edges))


@st.composite
def proper_graphs(draw, max_n=9):
    from rainbowmatch.generate import greedy_proper_coloring
    n = draw(st.integers(0, max_n))
    pairs = list(combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    G = greedy_proper_coloring(n, [p for keep, p in zip(mask, pairs) if keep])
    # scramble color names so ids are not always 0..k
    shift = draw(st.integers(0, 5))
    return EdgeColoredGraph(n, tuple((u, v, 3 * c + shift) for u, v, c in G.edges))


_acceptance_lines: list[str] = []


@pytest.fixture(scope='session')
def acceptance_log():
    return _acceptance_lines


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section('acceptance criteria')
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
