from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from oddinduced import generators as gen
from oddinduced.certificate import Branch, OddCertificate
from oddinduced.errors import (
    DuplicateEdgeError,
    EdgeCountMismatchError,
    MalformedEdgeError,
    MalformedHeaderError,
    PreconditionError,
    SelfLoopError,
    VertexOutOfRangeError,
)
from oddinduced.graph import (
    Graph,
    VertexSet,
    drop_isolated,
    format_edge_list,
    parse_edge_list,
    stats,
    verify_all_odd,
)
from oddinduced.oracle import all_odd_sets, labelled_graphs

from .conftest import graphs, naive_all_odd


def test_parse_k2(k2):
    assert parse_edge_list("2 1\n0 1") == k2


def test_parse_p3_with_comments(p3):
    assert parse_edge_list("# a path\n3 2\n\n0 1\n# middle\n1 2\n") == p3


@pytest.mark.parametrize(
    "text, error, line",
    [
        ("3 2\n0 1\n0 1", DuplicateEdgeError, 3),
        ("3 2\n0 1\n1 0", DuplicateEdgeError, 3),
        ("3 1\n0 3", VertexOutOfRangeError, 2),
        ("3 1\n1 1", SelfLoopError, 2),
        ("3\n0 1", MalformedHeaderError, 1),
        ("a b\n", MalformedHeaderError, 1),
        ("3 1\n0 x", MalformedEdgeError, 2),
        ("3 1\n0 1 2", MalformedEdgeError, 2),
        ("3 1\n0 1\n1 2", EdgeCountMismatchError, 3),
    ],
)
def test_parse_errors_name_the_line(text, error, line):
    with pytest.raises(error) as info:
        parse_edge_list(text)
    assert info.value.line == line
    assert f"line {line}" in str(info.value)


@pytest.mark.parametrize("text", ["", "\n", "# only a comment\n"])
def test_parse_missing_header(text):
    with pytest.raises(MalformedHeaderError):
        parse_edge_list(text)


def test_parse_too_few_edges():
    with pytest.raises(EdgeCountMismatchError):
        parse_edge_list("3 2\n0 1\n")


@given(graphs())
def test_format_parse_roundtrip(g):
    text = format_edge_list(g)
    assert parse_edge_list(text) == g
    edge_lines = [tuple(map(int, line.split())) for line in text.splitlines()[1:]]
    assert edge_lines == sorted(edge_lines)
    assert all(u < v for u, v in edge_lines)


def test_from_edges_rejects_bad_input():
    with pytest.raises(PreconditionError):
        Graph.from_edges(2, [(0, 0)])
    with pytest.raises(PreconditionError):
        Graph.from_edges(2, [(0, 1), (1, 0)])
    with pytest.raises(PreconditionError):
        Graph.from_edges(2, [(0, 2)])


@given(graphs())
def test_graph_invariants(g):
    g.check_invariants()
    assert g.m * 2 == sum(g.degrees())


def test_verify_examples(k2, p3, p5):
    assert verify_all_odd(k2, {0, 1})
    assert not verify_all_odd(p3, {0, 1, 2})
    assert verify_all_odd(p5, {0, 1, 3, 4})
    assert not verify_all_odd(k2, set())


def test_p5_all_odd_sets_by_enumeration(p5):
    # enumeration of all 32 subsets of P5 by the naive counter
    naive = {
        frozenset(s)
        for k in range(1, 6)
        for s in combinations(range(5), k)
        if naive_all_odd(p5, s)
    }
    assert frozenset({0, 1, 3, 4}) in naive
    assert max(map(len, naive)) == 4


@pytest.mark.parametrize("n", range(0, 6))
def test_verify_matches_naive_on_all_small_graphs(n):
    for _, g in labelled_graphs(n, min_degree=0):
        for mask in range(1 << n):
            ids = [v for v in range(n) if mask >> v & 1]
            assert verify_all_odd(g, mask) == naive_all_odd(g, ids)


@given(graphs(min_n=6, max_n=6), st.integers(0, 63))
def test_verify_matches_naive_six_vertices(g, mask):
    ids = [v for v in range(6) if mask >> v & 1]
    assert verify_all_odd(g, mask) == naive_all_odd(g, ids)


def test_vertex_set_bounds():
    with pytest.raises(PreconditionError):
        VertexSet(3, 1 << 3)
    s = VertexSet.of(5, [4, 0, 2])
    assert list(s) == [0, 2, 4] and len(s) == 3 and 2 in s and 1 not in s
    assert (s | VertexSet.of(5, [1])).to_list() == [0, 1, 2, 4]
    assert s.complement().to_list() == [1, 3]
    with pytest.raises(PreconditionError):
        s | VertexSet.of(6, [1])
    with pytest.raises(PreconditionError):
        verify_all_odd(gen.path(3), VertexSet.of(4, [0]))


def test_drop_isolated_examples(k2):
    g = Graph.from_edges(3, [(0, 1)])
    core, removed, labels = drop_isolated(g)
    assert core == k2 and removed.to_list() == [2] and labels == (0, 1)

    core, removed, labels = drop_isolated(k2)
    assert core == k2 and not removed

    core, removed, labels = drop_isolated(Graph.from_edges(3, []))
    assert core.n == 0 and removed.to_list() == [0, 1, 2] and labels == ()


def test_drop_isolated_relabels():
    g = Graph.from_edges(5, [(1, 3), (3, 4)])
    core, removed, labels = drop_isolated(g)
    assert labels == (1, 3, 4)
    assert removed.to_list() == [0, 2]
    assert sorted(core.edges()) == [(0, 1), (1, 2)]


@given(graphs())
def test_drop_isolated_idempotent(g):
    core, _, _ = drop_isolated(g)
    again, removed, labels = drop_isolated(core)
    assert again == core and not removed and labels == tuple(range(core.n))
    assert core.n == 0 or min(core.degrees()) >= 1


def test_stats_examples(s5, k3, p4):
    st5 = stats(s5)
    assert (st5.min_degree, st5.max_degree, st5.greedy_independence) == (1, 5, 5)
    st3 = stats(k3)
    assert (st3.min_degree, st3.max_degree, st3.greedy_independence) == (2, 2, 1)
    st4 = stats(p4)
    assert (st4.min_degree, st4.max_degree, st4.greedy_independence) == (1, 2, 2)


@given(graphs(min_n=1))
def test_stats_invariants(g):
    s = stats(g)
    assert s.min_degree <= s.max_degree < g.n
    assert s.greedy_independence * (s.max_degree + 1) >= g.n


def test_generate_examples(p5):
    s4 = gen.scott(4)
    assert (s4.n, s4.m) == (10, 12)
    assert all(s4.degree(b) == 2 for b in range(4, 10))
    assert gen.generate("path", [5]) == p5
    u = gen.generate("disjoint_union", [(gen.complete(2), 3)])
    assert (u.n, u.m, min(u.degrees())) == (6, 3, 1)
    assert gen.generate("cycle", [4]).m == 4
    with pytest.raises(PreconditionError):
        gen.generate("scott", [1])
    with pytest.raises(PreconditionError):
        gen.generate("gnp", [10, 1.5])
    with pytest.raises(PreconditionError):
        gen.generate("torus", [3])


@pytest.mark.parametrize("s", range(2, 9))
def test_scott_is_bipartite_pair_graph(s):
    g = gen.scott(s)
    assert g.n == s + s * (s - 1) // 2
    a = (1 << s) - 1
    for v in range(s):
        assert g.rows[v] & a == 0
    for b in range(s, g.n):
        i, j = gen.scott_pair(s, b)
        assert g.rows[b] == (1 << i) | (1 << j)


def test_scott_odd_sets_split_pairs():
    s = 4
    g = gen.scott(s)
    sets = all_odd_sets(g)
    assert sets
    for mask in sets:
        for b in range(s, g.n):
            if mask >> b & 1:
                i, j = gen.scott_pair(s, b)
                assert (mask >> i & 1) + (mask >> j & 1) == 1


def test_gnp_is_deterministic_and_seeded():
    a = gen.gnp(200, 0.05, seed=7)
    assert a == gen.gnp(200, 0.05, seed=7)
    assert a != gen.gnp(200, 0.05, seed=8)
    assert gen.gnp(30, 0.0, 1).m == 0
    assert gen.gnp(30, 1.0, 1).m == 30 * 29 // 2
    a.check_invariants()


def test_splitmix_reference_values():
    # SplitMix64 seeded with 0: published first outputs of the reference generator
    assert [int(x) for x in gen.splitmix64(0, 0, 3)] == [
        0xE220A8397B1DCDAF,
        0x6E789E6AA1B965F4,
        0x06C45D188009454F,
    ]
    rng = gen.SplitMix(0)
    assert rng.next() == 0xE220A8397B1DCDAF


def test_certificate_json_roundtrip(p5):
    from fractions import Fraction

    cert = OddCertificate(VertexSet.of(5, [0, 1, 3, 4]), Branch.ORACLE, Fraction(3, 2))
    doc = cert.to_dict()
    assert doc == {"n": 5, "set": [0, 1, 3, 4], "branch": "Oracle",
                   "guarantee": {"num": 3, "den": 2}}
    assert OddCertificate.from_json(cert.to_json()) == cert
    assert cert.is_valid(p5)
    assert not OddCertificate(VertexSet.of(5, [0, 1]), Branch.ORACLE, Fraction(3)).is_valid(p5)
