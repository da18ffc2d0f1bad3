"""Matching-growth pipeline and the certificate portfolio around it.

The pipeline grows a semi-induced matching ``M`` with sides ``U`` and ``W``,
tracking

    X = N(U) - (W + N(W))        vertices the matching extractor can use
    V = V(G) - N(U + W)          vertices still untouched

and at every step either finishes with a certificate or adds one pair. It
runs while ``|V| >= n/2``; afterwards ``X`` is large enough for the matching
extractor.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .certificate import Branch, OddCertificate
from .cluster import compute_l, extract_cluster, l_witness
from .errors import HypothesisViolation, InternalDefect, PreconditionError
from .extractors import (
    extract_from_independent,
    extract_from_matching,
    extract_max_degree,
    odd_part_certificate,
)
from .graph import Graph, VertexSet, greedy_independent_set, isolated_mask, iter_bits, lift
from .params import DEFAULT_PARAMS, Params

LOW_DEGREE = 80


class StepBranch(str, enum.Enum):
    X_LARGE = "XLarge"
    MANY_ISOLATED = "ManyIsolated"
    SMALL_L = "SmallL"
    CASE1 = "Case1"
    CASE2 = "Case2"
    LOW_DEGREE_FALLBACK = "LowDegreeFallback"
    TERMINATE = "Terminate"


@dataclass(frozen=True)
class TraceEvent:
    step: int
    branch: StepBranch
    x_size: int
    v_size: int
    l_size: int
    vprime_size: int
    edge: tuple[int, int] | None = None
    note: str = ""

    def line(self) -> str:
        out = (
            f"step={self.step} branch={self.branch.value} |X|={self.x_size} "
            f"|V|={self.v_size} |L|={self.l_size} |V'|={self.vprime_size}"
        )
        if self.edge is not None:
            out += f" edge={self.edge[0]}-{self.edge[1]}"
        if self.note:
            out += f" note={self.note}"
        return out


def format_trace(trace: list[TraceEvent]) -> str:
    return "".join(ev.line() + "\n" for ev in trace)


@dataclass
class MatchingState:
    """Pipeline state after ``step`` extensions. Sets are int masks.

    ``nu``/``nw`` cache ``N(U)``/``N(W)``; ``isolated`` is the set of
    vertices isolated in ``G[V]`` and ``vprime = V - isolated``;
    ``witness`` maps each member of ``L(G[vprime]; beta)`` to its witness.
    """

    step: int
    U: int
    W: int
    pairs: list[tuple[int, int]]
    X: int
    V: int
    nu: int
    nw: int
    isolated: int
    vprime: int
    witness: dict[int, int]
    trace: list[TraceEvent] = field(default_factory=list)

    @property
    def L(self) -> int:
        out = 0
        for v in self.witness:
            out |= 1 << v
        return out


def initial_state(g: Graph, p: Params = DEFAULT_PARAMS) -> MatchingState:
    iso = isolated_mask(g)
    vprime = g.all_mask & ~iso
    full = g.all_mask
    witness = {}
    for v in iter_bits(vprime):
        u = l_witness(g.rows, full, v, p.beta)
        if u is not None:
            witness[v] = u
    return MatchingState(0, 0, 0, [], 0, full, 0, 0, iso, vprime, witness)


def _event(s: MatchingState, branch: StepBranch, edge=None, note: str = "") -> TraceEvent:
    ev = TraceEvent(
        s.step,
        branch,
        s.X.bit_count(),
        s.V.bit_count(),
        len(s.witness),
        s.vprime.bit_count(),
        edge,
        note,
    )
    s.trace.append(ev)
    return ev


def _wrap(cert: OddCertificate, s: MatchingState) -> OddCertificate:
    return OddCertificate(cert.set, Branch.PIPELINE, cert.guarantee, f"step-{s.step}")


def _extend(g: Graph, s: MatchingState, a: int, b: int, p: Params, debug: bool) -> MatchingState:
    """Add pair ``(a -> U, b -> W)`` and update all derived sets."""
    rows = g.rows
    U = s.U | (1 << a)
    W = s.W | (1 << b)
    nu = s.nu | rows[a]
    nw = s.nw | rows[b]
    X = nu & ~(W | nw)
    V = g.all_mask & ~(nu | nw)

    left_v = s.V & ~V
    touched = g.neighborhood(left_v) & V
    iso = s.isolated & V
    for v in iter_bits(touched):
        if not rows[v] & V:
            iso |= 1 << v
    vprime = V & ~iso

    left_vp = s.vprime & ~vprime
    near = g.neighborhood(left_vp) & vprime
    affected = (near | g.neighborhood(near)) & vprime
    witness = {v: u for v, u in s.witness.items() if vprime >> v & 1 and not affected >> v & 1}
    for v in iter_bits(affected):
        u = l_witness(rows, V, v, p.beta)
        if u is not None:
            witness[v] = u
    witness = dict(sorted(witness.items()))

    nxt = MatchingState(
        s.step + 1, U, W, s.pairs + [(a, b)], X, V, nu, nw, iso, vprime, witness, s.trace
    )
    _check_matching(g, nxt)
    if debug:
        _check_definitions(g, nxt, p)
    return nxt


def _check_matching(g: Graph, s: MatchingState) -> None:
    covered = s.U | s.W
    for u, w in s.pairs:
        if g.rows[w] & covered != 1 << u:
            raise InternalDefect(f"W-vertex {w} lost the semi-induced property", s.trace)


def _check_definitions(g: Graph, s: MatchingState, p: Params) -> None:
    nu = g.neighborhood(s.U)
    nw = g.neighborhood(s.W)
    if s.X != nu & ~(s.W | nw) or s.V != g.all_mask & ~(nu | nw):
        raise InternalDefect("X or V drifted from its definition", s.trace)
    if s.X & (s.U | s.W | s.V):
        raise InternalDefect("X meets U, W or V", s.trace)
    sub, labels = g.induced(s.V)
    if lift(labels, isolated_mask(sub)) != s.isolated:
        raise InternalDefect("isolated set drifted", s.trace)
    sub2, labels2 = g.induced(s.vprime)
    _, wit = compute_l(sub2, p.beta)
    fresh = {labels2[v]: labels2[u] for v, u in wit.items()}
    if fresh != s.witness:
        raise InternalDefect("L drifted from its definition", s.trace)


def pipeline_step(
    s: MatchingState, g: Graph, p: Params = DEFAULT_PARAMS, debug: bool = False
) -> MatchingState | OddCertificate | None:
    """One round of the case analysis.

    Returns the next state, a terminal certificate, or ``None`` when the
    run is abandoned (the reason is the last trace event) so that the
    caller falls back to its portfolio.
    """
    n = g.n
    rows = g.rows
    if 2 * s.V.bit_count() < n:
        raise PreconditionError("pipeline step called with |V| < n/2")
    x_size = s.X.bit_count()

    if p.T * x_size >= 4 * n:
        _event(s, StepBranch.X_LARGE)
        return _wrap(extract_from_matching(g, s.pairs), s)

    if p.T * s.isolated.bit_count() >= 2 * n:
        _event(s, StepBranch.MANY_ISOLATED)
        return _wrap(extract_from_independent(g, s.isolated), s)

    L = s.L
    l_size = len(s.witness)
    vp_size = s.vprime.bit_count()
    if l_size * p.delta.denominator < p.delta.numerator * vp_size:
        _event(s, StepBranch.SMALL_L)
        sub, labels = g.induced(s.vprime)
        try:
            cert = extract_cluster(sub, p)
        except HypothesisViolation as exc:
            _event(s, StepBranch.TERMINATE, note=f"cluster-abandoned:{exc}".replace(" ", "_"))
            return None
        return OddCertificate(
            VertexSet(n, lift(labels, cert.set.bits)), Branch.PIPELINE, cert.guarantee,
            f"step-{s.step}",
        )

    ratio = p.invariant_ratio
    rn, rd = ratio.numerator, ratio.denominator
    dx = {v: (rows[v] & s.X).bit_count() for v in s.witness}
    dv = {v: (rows[v] & s.V).bit_count() for v in s.witness}

    if all(rd * dx[v] >= rn * dv[v] for v in s.witness):
        pick = None
        for x in iter_bits(s.X):
            dxl = (rows[x] & L).bit_count()
            for v in iter_bits(rows[x] & L):
                if dxl >= p.scan_factor * dx[v]:
                    pick = (x, v)
                    break
            if pick:
                break
        if pick is None:
            if p.scan_factor * x_size <= l_size:
                raise InternalDefect("case-1 edge scan failed under its counting bound", s.trace)
            _event(s, StepBranch.TERMINATE, note="case1-scan-failed")
            return None
        x, v = pick
        if dx[v] < 1:
            raise InternalDefect(f"case-1 pair ({x}, {v}) has d(v, X) = 0", s.trace)
        _event(s, StepBranch.CASE1, edge=pick)
        nxt = _extend(g, s, x, v, p, debug)
    else:
        v = min(
            (w for w in s.witness if rd * dx[w] <= rn * dv[w]),
            key=lambda w: (-dv[w], w),
        )
        u = s.witness[v]
        _event(s, StepBranch.CASE2, edge=(u, v))
        nxt = _extend(g, s, u, v, p, debug)

    removed = n - nxt.V.bit_count()
    x_new = nxt.X.bit_count()
    if x_new < ratio * removed:
        if x_new < ratio * removed - nxt.step:
            _event(nxt, StepBranch.TERMINATE, note="invariant-violated")
            return None
        nxt.trace[-1] = _noted(nxt.trace[-1], f"slack:{x_new}<{removed}*{ratio}")
    return nxt


def _noted(ev: TraceEvent, note: str) -> TraceEvent:
    return TraceEvent(
        ev.step, ev.branch, ev.x_size, ev.v_size, ev.l_size, ev.vprime_size, ev.edge, note
    )


def run_pipeline(
    g: Graph, p: Params = DEFAULT_PARAMS, debug: bool = False
) -> tuple[OddCertificate | None, list[TraceEvent]]:
    """Grow the matching until a branch terminates or ``|V| < n/2``."""
    s = initial_state(g, p)
    while 2 * s.V.bit_count() >= g.n:
        res = pipeline_step(s, g, p, debug)
        if res is None:
            return None, s.trace
        if isinstance(res, OddCertificate):
            return res, s.trace
        s = res
    if not s.X:
        _event(s, StepBranch.TERMINATE, note="empty-X")
        return None, s.trace
    _event(s, StepBranch.TERMINATE)
    return _wrap(extract_from_matching(g, s.pairs), s), s.trace


def _rank(cert: OddCertificate) -> tuple[int, list[int]]:
    # larger first, then lexicographically smaller id list
    return (-cert.size, cert.set.to_list())


def portfolio(
    g: Graph, p: Params = DEFAULT_PARAMS, debug: bool = False
) -> tuple[list[OddCertificate], list[TraceEvent]]:
    """Every certificate ``extract_odd`` chooses from, pipeline first."""
    found: list[OddCertificate] = []
    cert, trace = run_pipeline(g, p, debug)
    if cert is not None:
        found.append(cert)
    odd = odd_part_certificate(g)
    if odd is not None:
        found.append(odd)
    found.append(extract_max_degree(g))
    found.append(extract_from_independent(g, greedy_independent_set(g)))
    low = 0
    for v, row in enumerate(g.rows):
        if row.bit_count() <= LOW_DEGREE:
            low |= 1 << v
    if 2 * low.bit_count() >= g.n:
        ind = greedy_independent_set(g, low)
        trace.append(
            TraceEvent(len(trace), StepBranch.LOW_DEGREE_FALLBACK, 0, g.n, 0, 0,
                       note=f"low={low.bit_count()},independent={ind.bit_count()}")
        )
        found.append(extract_from_independent(g, ind))
    for c in found:
        if not c.is_valid(g):
            raise InternalDefect(f"{c.branch.value} certificate failed verification", trace)
    return found, trace


def extract_odd_traced(
    g: Graph, p: Params = DEFAULT_PARAMS, debug: bool = False
) -> tuple[OddCertificate, list[TraceEvent]]:
    if g.n < 2 or any(not r for r in g.rows):
        raise PreconditionError("extract_odd needs n >= 2 and no isolated vertices")
    found, trace = portfolio(g, p, debug)
    return min(found, key=_rank), trace


def extract_odd(g: Graph, p: Params = DEFAULT_PARAMS, debug: bool = False) -> OddCertificate:
    """Largest verified all-odd certificate from the pipeline and its portfolio.

    The graph must have no isolated vertices (see
    :func:`~oddinduced.graph.drop_isolated`).
    """
    return extract_odd_traced(g, p, debug)[0]


def peel_cover(g: Graph, p: Params = DEFAULT_PARAMS) -> tuple[list[VertexSet], VertexSet]:
    """Repeatedly remove an all-odd set from the non-isolated remainder.

    Returns the disjoint layers and the leftover, which is independent.
    """
    if g.n == 0 or any(not r for r in g.rows):
        raise PreconditionError("peel_cover needs a graph without isolated vertices")
    remaining = g.all_mask
    layers: list[VertexSet] = []
    while True:
        active = 0
        for v in iter_bits(remaining):
            if g.rows[v] & remaining:
                active |= 1 << v
        if not active:
            break
        sub, labels = g.induced(active)
        cert = extract_odd(sub, p)
        layer = lift(labels, cert.set.bits)
        layers.append(VertexSet(g.n, layer))
        remaining &= ~layer
    for v in iter_bits(remaining):
        if g.rows[v] & remaining:
            raise InternalDefect("peeling leftover is not independent")
    return layers, VertexSet(g.n, remaining)


def layer_bound(n: int) -> float:
    return 2 * math.log2(n) if n > 1 else 1.0
