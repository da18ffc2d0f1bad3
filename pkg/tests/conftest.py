from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import strategies as st

from oddinduced import generators as gen
from oddinduced.graph import Graph


def naive_all_odd(g: Graph, ids) -> bool:
    """Per-vertex neighbour counting on an explicit edge set; shares no code
    with the bitset verifier."""
    members = set(ids)
    if not members:
        return False
    edges = set(g.edges())
    for v in members:
        deg = sum(1 for u in members if (min(u, v), max(u, v)) in edges)
        if deg % 2 == 0:
            return False
    return True


def naive_all_even(g: Graph, ids) -> bool:
    members = set(ids)
    edges = set(g.edges())
    return all(
        sum(1 for u in members if (min(u, v), max(u, v)) in edges) % 2 == 0 for v in members
    )


@pytest.fixture
def k2():
    return gen.complete(2)


@pytest.fixture
def p3():
    return gen.path(3)


@pytest.fixture
def p4():
    return gen.path(4)


@pytest.fixture
def p5():
    return gen.path(5)


@pytest.fixture
def c4():
    return gen.cycle(4)


@pytest.fixture
def k3():
    return gen.complete(3)


@pytest.fixture
def s5():
    return gen.star(5)


@pytest.fixture
def k30():
    return gen.complete(30)


@st.composite
def graphs(draw, min_n: int = 0, max_n: int = 9, min_degree: int = 0):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = [p for p, keep in zip(pairs, chosen) if keep]
    g = Graph.from_edges(n, edges)
    if min_degree:
        from hypothesis import assume

        assume(all(r.bit_count() >= min_degree for r in g.rows))
    return g


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance")
        for num in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[num])
