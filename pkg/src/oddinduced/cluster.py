"""Extraction for graphs where few vertices have a lopsided neighbour.

``L(G; beta)`` is the set of vertices ``v`` having a neighbour ``u`` with
``|N(u) - N(v)| >= beta * |N(u) | N(v)|``. Outside ``L`` adjacent vertices
have almost equal neighbourhoods, so the closed neighbourhoods
``R(v) = ({v} | N(v)) - L`` of low-``L``-degree vertices form tight,
mutually non-adjacent clusters. One dense vertex per cluster then yields a
large odd subgraph through the maximum-degree extractor.

Two bounds on non-``L`` vertices justify the runtime checks below without
being evaluated themselves:

* chaining: if ``R(u)`` and ``R(v)`` share a vertex then
  ``|N(u) & N(v)| > (1 - 6 beta) |N(u) | N(v)|``;
* intersection: for ``v`` in ``V2`` this gives
  ``|R(u) & R(v)| > (1 - 8 beta) |N(u) | R(v)|``.

They imply each vertex meets exactly one chosen ``R_i`` and that distinct
clusters have no edges between them. Both consequences are checked; a
failure is reported as :class:`HypothesisViolation`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .certificate import Branch, OddCertificate
from .errors import HypothesisViolation, InternalDefect, PreconditionError
from .extractors import _max_degree_mask
from .gf2 import gallai_odd_even
from .graph import Graph, VertexSet, iter_bits, lift, verify_all_odd
from .params import DEFAULT_PARAMS, Params

CLUSTER_DENOMINATOR = 61


def l_witness(rows: tuple[int, ...], vmask: int, v: int, beta: Fraction) -> int | None:
    """Smallest-id witness for ``v`` in ``L`` of the graph induced on ``vmask``."""
    num, den = beta.numerator, beta.denominator
    nv = rows[v] & vmask
    for u in iter_bits(nv):
        nu = rows[u] & vmask
        if den * (nu & ~nv).bit_count() >= num * (nu | nv).bit_count():
            return u
    return None


def compute_l(g: Graph, beta: Fraction = DEFAULT_PARAMS.beta) -> tuple[VertexSet, dict[int, int]]:
    """``L(G; beta)`` and the smallest-id witness of each member.

    The test is asymmetric: it is ``u``'s side that must stick out, and
    ``N(u) - N(v)`` always contains ``v`` itself.
    """
    beta = Fraction(beta)
    witness: dict[int, int] = {}
    full = g.all_mask
    for v in range(g.n):
        u = l_witness(g.rows, full, v, beta)
        if u is not None:
            witness[v] = u
    return VertexSet.of(g.n, witness), witness


@dataclass
class ClusterState:
    """Everything computed on the way to the clustering certificate (masks)."""

    L: int
    witness: dict[int, int]
    V1: int = 0
    V2: int = 0
    family: list[tuple[int, int]] = field(default_factory=list)  # (center, R)
    clusters: list[int] = field(default_factory=list)  # U_i, aligned with family
    outputs: list[int] = field(default_factory=list)  # O_i

    @property
    def output(self) -> int:
        out = 0
        for o in self.outputs:
            out |= o
        return out


def _best_odd(sub: Graph) -> int:
    mask, _ = _max_degree_mask(sub)
    vo, _ = gallai_odd_even(sub)
    return vo.bits if len(vo) > mask.bit_count() else mask


def cluster_state(g: Graph, p: Params = DEFAULT_PARAMS) -> ClusterState:
    rows = g.rows
    n = g.n
    degs = g.degrees()
    if n == 0 or min(degs) < 1:
        raise PreconditionError("clustering needs a graph without isolated vertices")
    Lset, witness = compute_l(g, p.beta)
    L = Lset.bits
    if Lset and len(Lset) * p.delta.denominator > p.delta.numerator * n:
        raise HypothesisViolation(f"|L| = {len(Lset)} exceeds {p.delta} * {n}")
    st = ClusterState(L, witness)
    beta, eps = p.beta, p.epsilon
    outside = g.all_mask & ~L

    floor = math.ceil((1 - beta) / (2 * beta))
    for v in iter_bits(outside):
        if degs[v] < floor:
            raise InternalDefect(f"vertex {v} outside L has degree {degs[v]} < {floor}")
        if (rows[v] & L).bit_count() >= eps * degs[v]:
            st.V1 |= 1 << v
    st.V2 = outside & ~st.V1

    # degrees are close across every edge with both ends outside L
    lo = 1 - 2 * beta
    for v in iter_bits(outside):
        for u in iter_bits(rows[v] & outside):
            if u > v and not (lo * degs[u] <= degs[v] and lo * degs[v] <= degs[u]):
                raise InternalDefect(f"degrees of {u} and {v} not within ratio {lo}")

    owner: dict[int, int] = {}
    taken = 0
    for v in iter_bits(st.V2):
        r = (rows[v] | (1 << v)) & ~L
        if r.bit_count() < (1 - eps) * degs[v] + 1:
            raise InternalDefect(f"R({v}) smaller than (1 - eps) d + 1")
        if r & taken:
            continue
        idx = len(st.family)
        st.family.append((v, r))
        st.clusters.append(0)
        for x in iter_bits(r):
            owner[x] = idx
        taken |= r

    for v in iter_bits(outside):
        r = (rows[v] | (1 << v)) & ~L
        hit = {owner[x] for x in iter_bits(r & taken)}
        if len(hit) > 1:
            raise HypothesisViolation(f"R({v}) meets {len(hit)} cluster cores")
        if hit:
            st.clusters[hit.pop()] |= 1 << v
        elif st.V2 >> v & 1:
            raise InternalDefect(f"family is not maximal: R({v}) meets no core")

    union = 0
    for c in st.clusters:
        if union & c:
            raise HypothesisViolation("clusters overlap")
        union |= c
    for c in st.clusters:
        if g.neighborhood(c) & union & ~c:
            raise HypothesisViolation("edge between distinct clusters")
    for (_, r), c in zip(st.family, st.clusters):
        if r & ~c:
            raise InternalDefect("cluster core not contained in its cluster")
    return st


def extract_cluster(g: Graph, p: Params = DEFAULT_PARAMS) -> OddCertificate:
    """All-odd set of size at least ``n / 61`` when ``|L(G; beta)| <= delta n``.

    Raises :class:`HypothesisViolation` when the structure the bound relies
    on is absent: ``L`` too large, a vertex meeting two cluster cores, an
    edge between clusters, or a final set below ``n / 61``.
    """
    st = cluster_state(g, p)
    for c in st.clusters:
        sub, labels = g.induced(c)
        st.outputs.append(lift(labels, _best_odd(sub)))
    out = st.output
    if not verify_all_odd(g, out):
        raise HypothesisViolation("union of cluster outputs is not all-odd")
    guarantee = Fraction(g.n, CLUSTER_DENOMINATOR)
    if out.bit_count() < guarantee:
        raise HypothesisViolation(
            f"cluster certificate of size {out.bit_count()} below n/{CLUSTER_DENOMINATOR}"
        )
    return OddCertificate(VertexSet(g.n, out), Branch.CLUSTER, guarantee)
