"""Simple undirected graphs with one integer bitset per adjacency row.

Vertex ids are dense, ``0..n-1``. Every vertex subset is an ``int`` mask
internally; :class:`VertexSet` is the public, ``n``-aware wrapper.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    DuplicateEdgeError,
    EdgeCountMismatchError,
    MalformedEdgeError,
    MalformedHeaderError,
    PreconditionError,
    SelfLoopError,
    VertexOutOfRangeError,
)


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the positions of set bits in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(ids: Iterable[int]) -> int:
    mask = 0
    for v in ids:
        mask |= 1 << v
    return mask


@dataclass(frozen=True)
class VertexSet:
    """Immutable subset of ``range(n)`` stored as a bitmask."""

    n: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.bits < 0 or self.bits >> self.n:
            raise PreconditionError(f"vertex set has members outside [0, {self.n})")

    @classmethod
    def of(cls, n: int, ids: Iterable[int]) -> VertexSet:
        return cls(n, mask_of(ids))

    @classmethod
    def full(cls, n: int) -> VertexSet:
        return cls(n, (1 << n) - 1)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.bits)

    def __contains__(self, v: object) -> bool:
        return isinstance(v, int) and 0 <= v < self.n and bool(self.bits >> v & 1)

    def __bool__(self) -> bool:
        return self.bits != 0

    def _same(self, other: VertexSet) -> None:
        if other.n != self.n:
            raise PreconditionError("vertex sets belong to graphs of different order")

    def __or__(self, other: VertexSet) -> VertexSet:
        self._same(other)
        return VertexSet(self.n, self.bits | other.bits)

    def __and__(self, other: VertexSet) -> VertexSet:
        self._same(other)
        return VertexSet(self.n, self.bits & other.bits)

    def __sub__(self, other: VertexSet) -> VertexSet:
        self._same(other)
        return VertexSet(self.n, self.bits & ~other.bits)

    def complement(self) -> VertexSet:
        return VertexSet(self.n, ((1 << self.n) - 1) & ~self.bits)

    def to_list(self) -> list[int]:
        return list(iter_bits(self.bits))

    def __repr__(self) -> str:
        return f"VertexSet(n={self.n}, {self.to_list()})"


def as_mask(n: int, s: VertexSet | Iterable[int] | int) -> int:
    """Coerce a VertexSet, id iterable or raw mask into a mask over ``range(n)``."""
    if isinstance(s, VertexSet):
        if s.n != n:
            raise PreconditionError(f"vertex set is over {s.n} vertices, graph has {n}")
        return s.bits
    if isinstance(s, int):
        mask = s
    else:
        mask = 0
        for v in s:
            if not 0 <= v < n:
                raise PreconditionError(f"vertex {v} outside [0, {n})")
            mask |= 1 << v
    if mask < 0 or mask >> n:
        raise PreconditionError(f"vertex set has members outside [0, {n})")
    return mask


class Graph:
    """Immutable simple undirected graph.

    ``rows[v]`` is the neighbourhood of ``v`` as an int bitmask. Instances are
    never mutated after construction and may be shared freely.
    """

    __slots__ = ("n", "rows", "m")

    def __init__(self, n: int, rows: Sequence[int]) -> None:
        if len(rows) != n:
            raise PreconditionError("need exactly one adjacency row per vertex")
        self.n = n
        self.rows: tuple[int, ...] = tuple(rows)
        total = sum(r.bit_count() for r in self.rows)
        self.m = total // 2

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        if n < 0:
            raise PreconditionError("vertex count must be non-negative")
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise PreconditionError(f"edge ({u}, {v}) outside [0, {n})")
            if u == v:
                raise PreconditionError(f"self-loop at {u}")
            if rows[u] >> v & 1:
                raise PreconditionError(f"duplicate edge ({u}, {v})")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows)

    @classmethod
    def from_matrix(cls, adj: np.ndarray) -> Graph:
        """Build from a symmetric boolean matrix with zero diagonal."""
        adj = np.asarray(adj, dtype=bool)
        n = adj.shape[0]
        if adj.shape != (n, n) or adj.diagonal().any() or (adj != adj.T).any():
            raise PreconditionError("adjacency matrix must be square, symmetric, loop-free")
        if n == 0:
            return cls(0, [])
        packed = np.packbits(adj, axis=1, bitorder="little")
        return cls(n, [int.from_bytes(r.tobytes(), "little") for r in packed])

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    def vertices(self) -> VertexSet:
        return VertexSet.full(self.n)

    def neighbors(self, v: int) -> int:
        return self.rows[v]

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degree_into(self, v: int, mask: int) -> int:
        """``d(v, S) = |N(v) & S|``."""
        return (self.rows[v] & mask).bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighborhood(self, mask: int) -> int:
        """Union of the neighbourhoods of the vertices in ``mask``."""
        out = 0
        for v in iter_bits(mask):
            out |= self.rows[v]
        return out

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        for u, row in enumerate(self.rows):
            for v in iter_bits(row >> (u + 1)):
                yield u, u + 1 + v

    def induced(self, s: VertexSet | Iterable[int] | int) -> tuple[Graph, tuple[int, ...]]:
        """Induced subgraph relabelled to ``0..k-1``; ``labels[new] = old``."""
        mask = as_mask(self.n, s)
        labels = tuple(iter_bits(mask))
        if mask == self.all_mask:
            return self, labels
        index = {old: new for new, old in enumerate(labels)}
        rows = []
        for old in labels:
            r = 0
            for w in iter_bits(self.rows[old] & mask):
                r |= 1 << index[w]
            rows.append(r)
        return Graph(len(labels), rows), labels

    def check_invariants(self) -> None:
        """Full scan for loops, asymmetry and bits outside ``range(n)``."""
        for v, row in enumerate(self.rows):
            if row >> self.n or row < 0:
                raise AssertionError(f"row {v} has bits outside [0, {self.n})")
            if row >> v & 1:
                raise AssertionError(f"self-loop at {v}")
            for u in iter_bits(row):
                if not self.rows[u] >> v & 1:
                    raise AssertionError(f"asymmetric adjacency {v}-{u}")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.n, self.rows))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def lift(labels: Sequence[int], mask: int) -> int:
    """Map a mask over relabelled ids back to original ids."""
    out = 0
    for v in iter_bits(mask):
        out |= 1 << labels[v]
    return out


# --- edge-list format ---------------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    """Parse the ``n m`` / ``u v`` edge-list format.

    Lines whose first non-blank character is ``#`` are comments, blank lines
    are ignored. Each malformed input raises a distinct
    :class:`~oddinduced.errors.GraphParseError` subclass naming the line.
    """
    header: tuple[int, int] | None = None
    rows: list[int] = []
    seen = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 2:
                raise MalformedHeaderError(f"expected 'n m', got {line!r}", lineno)
            try:
                n, m = int(parts[0]), int(parts[1])
            except ValueError:
                raise MalformedHeaderError(f"expected integers 'n m', got {line!r}", lineno) from None
            if n < 0 or m < 0:
                raise MalformedHeaderError("n and m must be non-negative", lineno)
            header = (n, m)
            rows = [0] * n
            continue
        n, m = header
        if len(parts) != 2:
            raise MalformedEdgeError(f"expected 'u v', got {line!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise MalformedEdgeError(f"expected integers 'u v', got {line!r}", lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise VertexOutOfRangeError(f"vertex id outside [0, {n}) in {line!r}", lineno)
        if u == v:
            raise SelfLoopError(f"self-loop at vertex {u}", lineno)
        if rows[u] >> v & 1:
            raise DuplicateEdgeError(f"duplicate edge {u}-{v}", lineno)
        seen += 1
        if seen > m:
            raise EdgeCountMismatchError(f"more than the declared {m} edges", lineno)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    if header is None:
        raise MalformedHeaderError("missing 'n m' header")
    if seen != header[1]:
        raise EdgeCountMismatchError(f"declared {header[1]} edges, found {seen}")
    return Graph(header[0], rows)


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


# --- queries -------------------------------------------------------------------

def verify_all_odd(g: Graph, s: VertexSet | Iterable[int] | int) -> bool:
    """True iff ``s`` is nonempty and every member has odd degree inside ``s``."""
    mask = as_mask(g.n, s)
    if not mask:
        return False
    rows = g.rows
    for v in iter_bits(mask):
        if not (rows[v] & mask).bit_count() & 1:
            return False
    return True


def isolated_mask(g: Graph) -> int:
    out = 0
    for v, row in enumerate(g.rows):
        if not row:
            out |= 1 << v
    return out


def drop_isolated(g: Graph) -> tuple[Graph, VertexSet, tuple[int, ...]]:
    """Remove isolated vertices. Returns ``(graph, removed, labels)``."""
    iso = isolated_mask(g)
    sub, labels = g.induced(g.all_mask & ~iso)
    return sub, VertexSet(g.n, iso), labels


def greedy_independent_set(g: Graph, candidates: int | None = None) -> int:
    """Maximal independent set of ``G[candidates]`` by ascending degree in ``g``.

    Ties go to the smaller id. Degrees are static (computed once, in ``g``).
    """
    if candidates is None:
        candidates = g.all_mask
    order = sorted(iter_bits(candidates), key=lambda v: (g.rows[v].bit_count(), v))
    chosen = 0
    blocked = 0
    for v in order:
        if blocked >> v & 1:
            continue
        chosen |= 1 << v
        blocked |= g.rows[v] | (1 << v)
    return chosen


@dataclass(frozen=True)
class GraphStats:
    min_degree: int
    max_degree: int
    greedy_independence: int
    isolated: VertexSet


def stats(g: Graph) -> GraphStats:
    degs = g.degrees()
    return GraphStats(
        min_degree=min(degs, default=0),
        max_degree=max(degs, default=0),
        greedy_independence=greedy_independent_set(g).bit_count(),
        isolated=VertexSet(g.n, isolated_mask(g)),
    )
