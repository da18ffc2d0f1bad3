"""Constructive extractors: maximum degree, independent set, semi-induced matching.

The random subsets of the classical arguments are replaced by the method of
conditional expectations (:func:`derandomize_parity`), so every extractor is
deterministic.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .certificate import Branch, OddCertificate
from .errors import HypothesisViolation, InternalDefect, PreconditionError
from .gf2 import gallai_odd_even, larger_even_side
from .graph import Graph, VertexSet, as_mask, iter_bits, lift, verify_all_odd

MaskLike = VertexSet | Iterable[int] | int


def _derandomize(g: Graph, ground: int, targets: int, weight: Fraction) -> int:
    rows = g.rows
    undecided: dict[int, int] = {}
    for t in iter_bits(targets):
        c = (rows[t] & ground).bit_count()
        if c == 0:
            raise PreconditionError(f"target {t} has no neighbour in the ground set")
        undecided[t] = c
    parity = dict.fromkeys(undecided, 0)

    chosen = 0
    for v in iter_bits(ground):
        adj = list(iter_bits(rows[v] & targets))
        # Only targets whose last undecided neighbour is v change expectation.
        gain = weight
        for t in adj:
            if undecided[t] == 1:
                gain += 1 - 2 * parity[t]
        include = gain > 0
        for t in adj:
            undecided[t] -= 1
            if include:
                parity[t] ^= 1
        if include:
            chosen |= 1 << v

    achieved = sum(parity.values()) + weight * chosen.bit_count()
    expected = Fraction(len(undecided), 2) + weight * Fraction(ground.bit_count(), 2)
    if achieved < expected:
        raise InternalDefect(
            f"conditional expectations fell below start: {achieved} < {expected}"
        )
    return chosen


def derandomize_parity(
    ground: MaskLike, targets: MaskLike, g: Graph, weight_per_decided: Fraction | int = 0
) -> VertexSet:
    """Choose ``S`` within ``ground`` so that

        #{t in targets : |N(t) & S| odd} + weight * |S|
            >= |targets| / 2 + weight * |ground| / 2.

    Ground vertices are decided in ascending id. The conditional expectation
    of the objective, with undecided vertices fair coins, is exact: a target
    with an undecided neighbour contributes 1/2. Each choice keeps it from
    decreasing; ties exclude.
    """
    gm = as_mask(g.n, ground)
    tm = as_mask(g.n, targets)
    return VertexSet(g.n, _derandomize(g, gm, tm, Fraction(weight_per_decided)))


# --- maximum degree -----------------------------------------------------------

def _max_degree_mask(g: Graph) -> tuple[int, int]:
    """Returns ``(mask, max_degree)``."""
    degs = g.degrees()
    top = max(degs, default=0)
    if top == 0:
        raise PreconditionError("graph has no edges")
    v = degs.index(top)
    nbrs = g.rows[v]
    if top % 2 == 0:
        nbrs &= ~(1 << (nbrs.bit_length() - 1))
    sub, labels = g.induced(nbrs)
    vo, ve = gallai_odd_even(sub)
    # 2|Vo| >= top  <=>  |Vo| >= top / 2
    if 2 * len(vo) >= top:
        return lift(labels, vo.bits), top
    return lift(labels, ve.bits) | (1 << v), top


def extract_max_degree(g: Graph) -> OddCertificate:
    """All-odd set of size at least ``maxdeg / 2`` from one neighbourhood.

    Take an odd part ``U`` of the neighbourhood of a max-degree vertex ``v``
    and split ``G[U]`` into Gallai parts ``Vo`` (odd) and ``Ve`` (even). Since
    ``|U|`` is odd and ``|Vo|`` is even, ``|Ve|`` is odd, so ``v`` plus ``Ve``
    is all-odd too; one of the two has the required size.
    """
    mask, top = _max_degree_mask(g)
    cert = OddCertificate(VertexSet(g.n, mask), Branch.MAX_DEGREE, Fraction(top, 2))
    if not cert.is_valid(g):
        raise InternalDefect("max-degree extraction produced an invalid certificate")
    return cert


# --- independent set ----------------------------------------------------------

@dataclass
class DominationWork:
    """Intermediate sets of the independent-set extraction (all masks)."""

    independent: int
    dominators: int
    privates: dict[int, int] = field(default_factory=dict)  # w -> u_w
    private_set: int = 0
    chosen: int = 0
    odd_part: int = 0  # I0
    repaired: int = 0  # I1

    @property
    def output(self) -> int:
        return self.odd_part | self.repaired | self.chosen


def _minimal_dominator(g: Graph, ind: int) -> tuple[int, dict[int, int]]:
    """Inclusion-minimal D outside ``ind`` dominating ``ind``; returns (D, cover counts)."""
    rows = g.rows
    uncovered = ind
    heap = []
    for c in iter_bits(g.neighborhood(ind) & ~ind):
        heap.append((-(rows[c] & ind).bit_count(), c))
    heapq.heapify(heap)
    order: list[int] = []
    while uncovered:
        key, c = heapq.heappop(heap)
        cov = (rows[c] & uncovered).bit_count()
        if cov == 0:
            continue
        if -key != cov:
            heapq.heappush(heap, (-cov, c))
            continue
        order.append(c)
        uncovered &= ~rows[c]

    dom = 0
    for c in order:
        dom |= 1 << c
    cover = {u: (rows[u] & dom).bit_count() for u in iter_bits(ind)}
    for w in reversed(order):
        served = list(iter_bits(rows[w] & ind))
        if all(cover[u] >= 2 for u in served):
            dom &= ~(1 << w)
            for u in served:
                cover[u] -= 1
    return dom, cover


def independent_work(g: Graph, independent: MaskLike) -> DominationWork:
    ind = as_mask(g.n, independent)
    rows = g.rows
    if not ind:
        raise PreconditionError("independent set is empty")
    for u in iter_bits(ind):
        if rows[u] & ind:
            raise PreconditionError(f"set is not independent (vertex {u})")
        if not rows[u]:
            raise PreconditionError(f"vertex {u} has no neighbour outside the set")

    dom, cover = _minimal_dominator(g, ind)
    work = DominationWork(ind, dom)
    for w in iter_bits(dom):
        private = next((u for u in iter_bits(rows[w] & ind) if cover[u] == 1), None)
        if private is None:
            raise InternalDefect(f"dominator {w} has no private neighbour")
        work.privates[w] = private
        work.private_set |= 1 << private

    targets = ind & ~work.private_set
    work.chosen = _derandomize(g, dom, targets, Fraction(1))
    for u in iter_bits(targets):
        if (rows[u] & work.chosen).bit_count() & 1:
            work.odd_part |= 1 << u
    base = work.chosen | work.odd_part
    for w in iter_bits(work.chosen):
        # u_w joins exactly when w would otherwise sit at even degree
        # (the source writes this condition with a primed w; it is w itself)
        if not (rows[w] & base).bit_count() & 1:
            work.repaired |= 1 << work.privates[w]
    return work


def extract_from_independent(g: Graph, independent: MaskLike) -> OddCertificate:
    """All-odd set of size at least ``|I| / 2`` built around independent ``I``.

    ``I`` must be independent and every member must have a neighbour (which
    is then necessarily outside ``I``).
    """
    work = independent_work(g, independent)
    cert = OddCertificate(
        VertexSet(g.n, work.output),
        Branch.INDEPENDENT_SET,
        Fraction(work.independent.bit_count(), 2),
    )
    if not cert.is_valid(g):
        raise InternalDefect("independent-set extraction produced an invalid certificate")
    return cert


# --- semi-induced matching ----------------------------------------------------

@dataclass
class MatchingWork:
    """Intermediate sets of the matching extraction (all masks)."""

    pairs: list[tuple[int, int]]
    U: int
    W: int
    X: int
    U0: int = 0
    X0: int = 0
    X1: int = 0
    mates_included: int = 0  # subset of U0

    @property
    def mate(self) -> dict[int, int]:
        return dict(self.pairs)

    @property
    def output(self) -> int:
        out = self.X1 | self.U0
        mate = self.mate
        for u in iter_bits(self.mates_included):
            out |= 1 << mate[u]
        return out


def outer_neighbourhood(g: Graph, pairs: list[tuple[int, int]]) -> MatchingWork:
    """Validate a semi-induced matching and compute ``X = N(U) - (W + N(W))``."""
    rows = g.rows
    U = W = 0
    for u, w in pairs:
        if not (0 <= u < g.n and 0 <= w < g.n) or not g.has_edge(u, w):
            raise PreconditionError(f"pair ({u}, {w}) is not an edge")
        bits = (1 << u) | (1 << w)
        if (U | W) & bits:
            raise PreconditionError(f"pair ({u}, {w}) reuses a matched vertex")
        U |= 1 << u
        W |= 1 << w
    covered = U | W
    for u, w in pairs:
        if rows[w] & covered != 1 << u:
            raise HypothesisViolation(f"vertex {w} has a covered neighbour besides its mate {u}")
    x = g.neighborhood(U) & ~(W | g.neighborhood(W))
    return MatchingWork(list(pairs), U, W, x)


def extract_from_matching(g: Graph, pairs: list[tuple[int, int]]) -> OddCertificate:
    """All-odd set of size at least ``|X| / 4`` from a semi-induced matching.

    ``U0`` is chosen so that at least half of ``X`` sees it an odd number of
    times (``X0``); ``X1`` is the larger even side of ``G[X0]``. Every
    ``u`` in ``U0`` is kept and its parity is fixed by adding its mate when
    ``d(u, X1) + d(u, U0)`` is even. The ``d(u, U0)`` term covers edges inside
    ``U``, which a pipeline-built matching can have.
    """
    inst = outer_neighbourhood(g, pairs)
    if not inst.X:
        raise HypothesisViolation("matching has an empty outer neighbourhood")
    rows = g.rows
    inst.U0 = _derandomize(g, inst.U, inst.X, Fraction(0))
    for x in iter_bits(inst.X):
        if (rows[x] & inst.U0).bit_count() & 1:
            inst.X0 |= 1 << x
    sub, labels = g.induced(inst.X0)
    inst.X1 = lift(labels, larger_even_side(sub).bits)
    for u in iter_bits(inst.U0):
        if not ((rows[u] & inst.X1).bit_count() + (rows[u] & inst.U0).bit_count()) & 1:
            inst.mates_included |= 1 << u
    cert = OddCertificate(
        VertexSet(g.n, inst.output), Branch.MATCHING, Fraction(inst.X.bit_count(), 4)
    )
    if not cert.is_valid(g):
        raise InternalDefect("matching extraction produced an invalid certificate")
    return cert


def odd_part_certificate(g: Graph) -> OddCertificate | None:
    """The odd side of the Gallai odd/even partition, if nonempty."""
    vo, _ = gallai_odd_even(g)
    if not vo:
        return None
    if not verify_all_odd(g, vo):
        raise InternalDefect("Gallai odd part failed verification")
    return OddCertificate(vo, Branch.GALLAI_ODD, Fraction(0))
