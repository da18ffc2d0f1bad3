"""Deterministic graph generators.

Random choices come from SplitMix64 in counter form so that a corpus is
bit-reproducible from ``(kind, params, seed)`` in any language:

    z_k = seed + k * 0x9E3779B97F4A7C15            (mod 2**64, k = 1, 2, ...)
    z_k = (z_k ^ (z_k >> 30)) * 0xBF58476D1CE4E5B9
    z_k = (z_k ^ (z_k >> 27)) * 0x94D049BB133111EB
    out = z_k ^ (z_k >> 31)

``gnp`` consumes one draw per pair ``u < v`` in lexicographic order and keeps
the edge iff ``out < floor(p * 2**64)``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from .errors import PreconditionError
from .graph import Graph

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_MASK64 = (1 << 64) - 1


def splitmix64(seed: int, start: int, count: int) -> np.ndarray:
    """Draws ``start+1 .. start+count`` of the counter-mode SplitMix64 stream."""
    k = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(seed & _MASK64) + k * _GAMMA
        z = (z ^ (z >> np.uint64(30))) * _MIX1
        z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


class SplitMix:
    """Sequential scalar view of the same stream, for small generators."""

    def __init__(self, seed: int) -> None:
        self.seed = seed & _MASK64
        self.k = 0

    def next(self) -> int:
        self.k += 1
        z = (self.seed + self.k * 0x9E3779B97F4A7C15) & _MASK64
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform-ish integer in ``[0, bound)`` (multiply-shift)."""
        return (self.next() * bound) >> 64

    def chance(self, p: float) -> bool:
        return self.next() < _threshold(p)


def _threshold(p: float) -> int:
    if not 0.0 <= p <= 1.0:
        raise PreconditionError(f"edge probability {p} outside [0, 1]")
    return min(int(Fraction(p) * (1 << 64)), 1 << 64)


def path(n: int) -> Graph:
    if n < 1:
        raise PreconditionError("path needs n >= 1")
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise PreconditionError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)])


def complete(n: int) -> Graph:
    if n < 1:
        raise PreconditionError("complete graph needs n >= 1")
    return Graph.from_matrix(~np.eye(n, dtype=bool))


def star(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def gnp(n: int, p: float, seed: int) -> Graph:
    if n < 0:
        raise PreconditionError("gnp needs n >= 0")
    thr = _threshold(p)
    adj = np.zeros((n, n), dtype=bool)
    if thr == 0 or n < 2:
        return Graph.from_matrix(adj)
    drawn = 0
    # one row block at a time keeps memory at O(n * block)
    block = max(1, 2_000_000 // max(n, 1))
    for lo in range(0, n - 1, block):
        hi = min(n - 1, lo + block)
        us = np.repeat(np.arange(lo, hi), [n - 1 - u for u in range(lo, hi)])
        vs = np.concatenate([np.arange(u + 1, n) for u in range(lo, hi)])
        draws = splitmix64(seed, drawn, len(us))
        drawn += len(us)
        keep = draws < np.uint64(thr) if thr < (1 << 64) else np.ones(len(us), dtype=bool)
        adj[us[keep], vs[keep]] = True
    adj |= adj.T
    return Graph.from_matrix(adj)


def scott(s: int) -> Graph:
    """Bipartite pair graph: ``A = [0, s)``, one B-vertex per pair ``i < j``.

    B-vertices get ids ``s, s+1, ...`` in lexicographic pair order and are
    joined to both members of their pair.
    """
    if s < 2:
        raise PreconditionError("scott construction needs s >= 2")
    edges = []
    for b, (i, j) in enumerate(combinations(range(s), 2), start=s):
        edges.append((i, b))
        edges.append((j, b))
    return Graph.from_edges(s + s * (s - 1) // 2, edges)


def scott_pair(s: int, b: int) -> tuple[int, int]:
    """The A-pair ``(i, j)`` that B-vertex ``b`` of ``scott(s)`` stands for."""
    for idx, pair in enumerate(combinations(range(s), 2), start=s):
        if idx == b:
            return pair
    raise PreconditionError(f"{b} is not a B-vertex of scott({s})")


def disjoint_union(graphs: Sequence[Graph]) -> Graph:
    rows: list[int] = []
    offset = 0
    for g in graphs:
        rows.extend(r << offset for r in g.rows)
        offset += g.n
    return Graph(offset, rows)


def clique_blocks(
    sizes: Sequence[int], seed: int, drop: float = 0.0, bridges: int = 0
) -> Graph:
    """Disjoint cliques, each edge removed with probability ``drop``, plus
    ``bridges`` random edges between distinct blocks."""
    n = sum(sizes)
    adj = np.zeros((n, n), dtype=bool)
    rng = SplitMix(seed)
    block_of = []
    offset = 0
    for b, k in enumerate(sizes):
        for u in range(offset, offset + k):
            block_of.append(b)
            for v in range(u + 1, offset + k):
                if not (drop and rng.chance(drop)):
                    adj[u, v] = True
        offset += k
    added = 0
    tries = 0
    while added < bridges and tries < 100 * (bridges + 1):
        tries += 1
        u, v = rng.below(n), rng.below(n)
        if u == v or block_of[u] == block_of[v] or adj[min(u, v), max(u, v)]:
            continue
        adj[min(u, v), max(u, v)] = True
        added += 1
    adj |= adj.T
    return Graph.from_matrix(adj)


def matching_instance(
    pairs: int,
    k: int,
    seed: int,
    inner_u: float = 0.3,
    inner_x: float = 0.2,
    decoys: int = 0,
) -> tuple[Graph, list[tuple[int, int]], int]:
    """Synthetic semi-induced matching with a known outer neighbourhood.

    Layout: ``u_j = 2j``, ``w_j = 2j+1`` for ``j < pairs``; then ``k`` vertices
    forming X (each gets at least one U-neighbour); then ``decoys`` vertices
    adjacent to some ``w`` (and possibly to U), which are therefore excluded
    from X. Edges inside U appear with probability ``inner_u`` and inside X
    with probability ``inner_x``. Returns ``(graph, pairs, x_mask)``.
    """
    if pairs < 1 or k < 0 or decoys < 0:
        raise PreconditionError("need pairs >= 1, k >= 0, decoys >= 0")
    rng = SplitMix(seed)
    n = 2 * pairs + k + decoys
    edges: set[tuple[int, int]] = set()

    def add(a: int, b: int) -> None:
        edges.add((min(a, b), max(a, b)))

    us = [2 * j for j in range(pairs)]
    xs = list(range(2 * pairs, 2 * pairs + k))
    ds = list(range(2 * pairs + k, n))
    for j in range(pairs):
        add(2 * j, 2 * j + 1)
    for a, b in combinations(us, 2):
        if rng.chance(inner_u):
            add(a, b)
    for x in xs:
        add(x, us[rng.below(pairs)])
        for u in us:
            if rng.chance(0.05):
                add(x, u)
    for a, b in combinations(xs, 2):
        if rng.chance(inner_x):
            add(a, b)
    for d in ds:
        add(d, 2 * rng.below(pairs) + 1)
        if rng.chance(0.5):
            add(d, us[rng.below(pairs)])
        if xs and rng.chance(0.5):
            add(d, xs[rng.below(k)])
    g = Graph.from_edges(n, sorted(edges))
    x_mask = 0
    for x in xs:
        x_mask |= 1 << x
    return g, [(2 * j, 2 * j + 1) for j in range(pairs)], x_mask


def generate(kind: str, params: Sequence, seed: int = 0) -> Graph:
    """Dispatch by name: path, cycle, complete, gnp, scott, disjoint_union.

    ``disjoint_union`` takes ``[graph, ...]`` or ``[(graph, copies), ...]``.
    """
    try:
        if kind == "path":
            return path(int(params[0]))
        if kind == "cycle":
            return cycle(int(params[0]))
        if kind == "complete":
            return complete(int(params[0]))
        if kind == "gnp":
            return gnp(int(params[0]), float(params[1]), seed)
        if kind == "scott":
            return scott(int(params[0]))
        if kind == "disjoint_union":
            parts: list[Graph] = []
            for item in params:
                if isinstance(item, Graph):
                    parts.append(item)
                else:
                    g, copies = item
                    parts.extend([g] * int(copies))
            return disjoint_union(parts)
    except (IndexError, TypeError, ValueError) as exc:
        raise PreconditionError(f"bad parameters for {kind}: {exc}") from None
    raise PreconditionError(f"unknown generator kind {kind!r}")
