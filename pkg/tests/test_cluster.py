import math
from fractions import Fraction

import pytest

from oddinduced import generators as gen
from oddinduced.cluster import cluster_state, compute_l, extract_cluster
from oddinduced.errors import HypothesisViolation, PreconditionError
from oddinduced.graph import Graph, iter_bits
from oddinduced.params import DEFAULT_PARAMS, Params

from .conftest import naive_all_odd


def near_regular(seed: int) -> Graph:
    rng = gen.SplitMix(seed)
    sizes = [50 + rng.below(31) for _ in range(15)]
    return gen.clique_blocks(sizes, seed, drop=0.004, bridges=6)


def brute_l(g: Graph, beta: Fraction) -> dict[int, int]:
    """Set arithmetic on Python sets, straight from the definition."""
    nbr = {v: {u for u in range(g.n) if g.has_edge(u, v)} for v in range(g.n)}
    out = {}
    for v in range(g.n):
        for u in sorted(nbr[v]):
            if len(nbr[u] - nbr[v]) >= beta * len(nbr[u] | nbr[v]):
                out[v] = u
                break
    return out


def test_l_complete_graph(k30):
    L, witness = compute_l(k30, Fraction(1, 20))
    assert not L and witness == {}


def test_l_star(s5):
    L, witness = compute_l(s5, Fraction(1, 20))
    assert L.to_list() == [0, 1, 2, 3, 4, 5]
    assert witness[0] == 1 and all(witness[leaf] == 0 for leaf in range(1, 6))


def test_l_edge(k2):
    assert compute_l(k2, Fraction(1, 20))[0].to_list() == [0, 1]


@pytest.mark.parametrize("seed", range(6))
def test_l_matches_definition(seed):
    g = gen.gnp(40, 0.3, seed)
    for beta in (Fraction(1, 20), Fraction(1, 10), Fraction(1, 3)):
        assert compute_l(g, beta)[1] == brute_l(g, beta)


def test_l_matches_definition_near_regular():
    g = near_regular(3)
    assert compute_l(g)[1] == brute_l(g, Fraction(1, 20))


def test_cluster_k30_union():
    g = gen.disjoint_union([gen.complete(30)] * 4)
    st = cluster_state(g)
    assert st.L == 0 and len(st.clusters) == 4
    c = extract_cluster(g)
    assert c.size == 120


def test_cluster_single_clique(k30):
    c = extract_cluster(k30)
    assert c.size >= 15 and naive_all_odd(k30, c.set)


def test_cluster_star_violates_hypothesis(s5):
    with pytest.raises(HypothesisViolation):
        extract_cluster(s5)


def test_cluster_needs_min_degree():
    with pytest.raises(PreconditionError):
        extract_cluster(Graph.from_edges(3, [(0, 1)]))


@pytest.mark.parametrize("seed", [0, 3, 5, 11])
def test_cluster_state_invariants(seed):
    g = near_regular(seed)
    p = DEFAULT_PARAMS
    st = cluster_state(g, p)
    rows = g.rows
    outside = g.all_mask & ~st.L
    for v in iter_bits(outside):
        assert g.degree(v) >= 10
        in_v1 = (rows[v] & st.L).bit_count() >= p.epsilon * g.degree(v)
        assert bool(st.V1 >> v & 1) == in_v1
    assert st.V2 == outside & ~st.V1
    cores = [r for _, r in st.family]
    for i, a in enumerate(cores):
        for b in cores[i + 1:]:
            assert a & b == 0
    for v in iter_bits(st.V2):
        r = (rows[v] | 1 << v) & ~st.L
        assert r.bit_count() >= 10
        assert sum(1 for c in cores if c & r) == 1
    for (_, r), c in zip(st.family, st.clusters):
        assert r & ~c == 0
    union = 0
    for c in st.clusters:
        union |= c
    for c in st.clusters:
        assert g.neighborhood(c) & union & ~c == 0
    for u, v in g.edges():
        if outside >> u & 1 and outside >> v & 1:
            du, dv = g.degree(u), g.degree(v)
            assert (1 - 2 * p.beta) * du <= dv <= du / (1 - 2 * p.beta)


@pytest.mark.parametrize("seed", [0, 1, 3, 7, 12, 19])
def test_cluster_bound_near_regular(seed):
    g = near_regular(seed)
    L, _ = compute_l(g)
    assert len(L) * 14 <= g.n
    c = extract_cluster(g)
    assert naive_all_odd(g, c.set)
    assert c.size >= math.ceil(g.n / 61)


def test_params_validation():
    assert Params() == DEFAULT_PARAMS
    assert DEFAULT_PARAMS.beta == Fraction(1, 20) and DEFAULT_PARAMS.T == 10000
    with pytest.raises(PreconditionError):
        Params(beta=Fraction(1, 8))
    with pytest.raises(PreconditionError):
        Params(T=100)
    with pytest.raises(PreconditionError):
        DEFAULT_PARAMS.with_overrides({"gamma": "1"})
    assert DEFAULT_PARAMS.with_overrides({"beta": "1/16"}).beta == Fraction(1, 16)
