"""Exhaustive ground truth for small graphs."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import OracleLimitExceeded, PreconditionError
from .graph import Graph, VertexSet, iter_bits

FO_MIN_MAX_N = 6


@dataclass(frozen=True)
class OracleResult:
    size: int
    witness: VertexSet
    explored: int


def components(g: Graph) -> list[int]:
    """Connected components as masks, ordered by smallest member."""
    seen = 0
    out = []
    for v in range(g.n):
        if seen >> v & 1:
            continue
        comp = frontier = 1 << v
        while frontier:
            nxt = 0
            for u in iter_bits(frontier):
                nxt |= g.rows[u]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        out.append(comp)
    return out


def _search(rows: tuple[int, ...], verts: list[int], sizes, parity: int) -> tuple[int, int, int]:
    """First subset (by descending size, then lexicographic) whose members all
    have induced degree of the given parity. Returns (size, mask, explored)."""
    explored = 0
    for k in sizes:
        for combo in combinations(verts, k):
            explored += 1
            m = 0
            for v in combo:
                m |= 1 << v
            for v in combo:
                if (rows[v] & m).bit_count() & 1 != parity:
                    break
            else:
                return k, m, explored
    return 0, 0, explored


def _odd_in(rows: tuple[int, ...], comp: int) -> tuple[int, int, int]:
    verts = list(iter_bits(comp))
    k = len(verts)
    # all-odd graphs have even order (handshake)
    return _search(rows, verts, range(k - (k & 1), 1, -2), 1)


def fo_exact(g: Graph, limit: int = 20) -> OracleResult:
    """Exact maximum all-odd induced subgraph, component by component.

    The witness is the union of the lexicographically smallest maximum
    witness of every component.
    """
    total = witness = explored = 0
    for comp in components(g):
        if comp.bit_count() > limit:
            raise OracleLimitExceeded(
                f"component with {comp.bit_count()} vertices exceeds limit {limit}"
            )
        size, mask, seen = _odd_in(g.rows, comp)
        total += size
        witness |= mask
        explored += seen
    return OracleResult(total, VertexSet(g.n, witness), explored)


def fo_exact_whole(g: Graph, limit: int = 16) -> OracleResult:
    """Same value as :func:`fo_exact` by enumerating the whole graph at once."""
    if g.n > limit:
        raise OracleLimitExceeded(f"{g.n} vertices exceeds limit {limit}")
    size, mask, seen = _odd_in(g.rows, g.all_mask)
    return OracleResult(size, VertexSet(g.n, mask), seen)


def all_odd_sets(g: Graph) -> list[int]:
    """Every nonempty all-odd vertex set, as masks (small graphs only)."""
    if g.n > 20:
        raise OracleLimitExceeded("all_odd_sets is limited to 20 vertices")
    out = []
    rows = g.rows
    for m in range(1, 1 << g.n):
        if all((rows[v] & m).bit_count() & 1 for v in iter_bits(m)):
            out.append(m)
    return out


def fe_exact(g: Graph, limit: int = 20) -> OracleResult:
    """Exact maximum all-even induced subgraph (whole-graph enumeration)."""
    if g.n > limit:
        raise OracleLimitExceeded(f"{g.n} vertices exceeds limit {limit}")
    size, mask, seen = _search(g.rows, list(range(g.n)), range(g.n, 0, -1), 0)
    return OracleResult(size, VertexSet(g.n, mask), seen)


def independence_number(g: Graph, limit: int = 20) -> int:
    if g.n > limit:
        raise OracleLimitExceeded(f"{g.n} vertices exceeds limit {limit}")
    rows = g.rows
    for k in range(g.n, 0, -1):
        for combo in combinations(range(g.n), k):
            m = 0
            for v in combo:
                m |= 1 << v
            if not any(rows[v] & m for v in combo):
                return k
    return 0


def graph_from_edge_mask(n: int, mask: int) -> Graph:
    """Bit ``i`` of ``mask`` selects the ``i``-th pair of ``combinations(range(n), 2)``."""
    rows = [0] * n
    for i, (u, v) in enumerate(combinations(range(n), 2)):
        if mask >> i & 1:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
    return Graph(n, rows)


def labelled_graphs(n: int, min_degree: int = 1):
    """All labelled graphs on ``n`` vertices with the given minimum degree,
    in increasing edge-mask order. Yields ``(mask, graph)``."""
    pairs = n * (n - 1) // 2
    for mask in range(1 << pairs):
        g = graph_from_edge_mask(n, mask)
        if all(r.bit_count() >= min_degree for r in g.rows):
            yield mask, g


def fo_min_over_graphs(n: int) -> tuple[int, Graph]:
    """``min f_o(G)`` over labelled ``n``-vertex graphs with no isolated vertex.

    The returned graph has the smallest edge mask among the minimisers.
    """
    if n > FO_MIN_MAX_N:
        raise OracleLimitExceeded(f"n = {n} exceeds {FO_MIN_MAX_N}")
    if n < 2:
        raise PreconditionError("no graph on fewer than 2 vertices lacks isolated vertices")
    best: tuple[int, Graph] | None = None
    for _, g in labelled_graphs(n):
        value = fo_exact(g).size
        if best is None or value < best[0]:
            best = (value, g)
    assert best is not None
    return best
