"""Linear algebra over GF(2) and Gallai's two vertex partitions.

Both partitions reduce to one linear system in the indicator vector ``x`` of
the first part. With ``A`` the adjacency matrix, ``d`` the degree-parity
vector and ``D = diag(d)``:

* even/even: for ``v`` in the part, ``(Ax)_v = 0``; for ``v`` outside,
  ``d_v - (Ax)_v = 0``. Together ``(Ax)_v = d_v + x_v d_v``, i.e.
  ``(A + D) x = d``.
* odd/even: for ``v`` in the odd part, ``(Ax)_v = 1``; outside,
  ``(Ax)_v = d_v``. Together ``(Ax)_v = d_v + x_v (1 + d_v)``, i.e.
  ``(A + D + I) x = d``.

Gallai's theorem says both systems are always consistent, so an
inconsistent system here is an :class:`InternalDefect`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InternalDefect, PreconditionError
from .graph import Graph, VertexSet, iter_bits

_WORD = 64


def _words(bits: int) -> int:
    return max(1, (bits + _WORD - 1) // _WORD)


def _pack(values: Sequence[int], bits: int) -> np.ndarray:
    nbytes = _words(bits) * 8
    buf = b"".join(v.to_bytes(nbytes, "little") for v in values)
    return np.frombuffer(buf, dtype="<u8").reshape(len(values), -1).copy()


def _unpack(packed: np.ndarray) -> list[int]:
    return [int.from_bytes(row.astype("<u8").tobytes(), "little") for row in packed]


def as_bitvector(b: int | Iterable[int], length: int) -> int:
    if isinstance(b, int):
        vec = b
    else:
        bits = list(b)
        if len(bits) != length:
            raise PreconditionError(f"bit-vector has length {len(bits)}, expected {length}")
        vec = 0
        for i, bit in enumerate(bits):
            if bit not in (0, 1, True, False):
                raise PreconditionError("bit-vector entries must be 0 or 1")
            if bit:
                vec |= 1 << i
    if vec < 0 or vec >> length:
        raise PreconditionError(f"bit-vector does not fit in {length} bits")
    return vec


class BitMatrix:
    """Dense GF(2) matrix; row ``i`` is an int whose bit ``j`` is entry ``(i, j)``."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: Sequence[int]) -> None:
        if len(data) != rows:
            raise PreconditionError("row count does not match data")
        for r in data:
            if r < 0 or r >> cols:
                raise PreconditionError(f"row wider than {cols} columns")
        self.rows = rows
        self.cols = cols
        self.data: tuple[int, ...] = tuple(data)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls(n, n, [1 << i for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> BitMatrix:
        return cls(rows, cols, [0] * rows)

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> BitMatrix:
        cols = len(entries[0]) if entries else 0
        return cls(len(entries), cols, [as_bitvector(r, cols) for r in entries])

    def __add__(self, other: BitMatrix) -> BitMatrix:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise PreconditionError("shape mismatch")
        return BitMatrix(self.rows, self.cols, [a ^ b for a, b in zip(self.data, other.data)])

    def matvec(self, x: int) -> int:
        out = 0
        for i, r in enumerate(self.data):
            if (r & x).bit_count() & 1:
                out |= 1 << i
        return out

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BitMatrix)
            and (self.rows, self.cols, self.data) == (other.rows, other.cols, other.data)
        )

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols})"


@dataclass(frozen=True)
class Gf2Solution:
    """Affine solution space ``particular + span(nullspace_basis)``."""

    particular: int
    nullspace_basis: tuple[int, ...]
    length: int


def solve_gf2(m: BitMatrix, b: int | Iterable[int]) -> Gf2Solution | None:
    """Solve ``m x = b`` by Gauss-Jordan elimination, leftmost pivot first.

    Returns ``None`` if the system is inconsistent. Free variables are zero
    in the particular solution; the kernel basis has one vector per free
    column, in ascending column order.
    """
    rhs = as_bitvector(b, m.rows)
    cols = m.cols
    if m.rows == 0:
        return Gf2Solution(0, tuple(1 << j for j in range(cols)), cols)
    aug = _pack([r | ((rhs >> i & 1) << cols) for i, r in enumerate(m.data)], cols + 1)

    pivots: list[int] = []
    r = 0
    for col in range(cols):
        if r == m.rows:
            break
        word, bit = divmod(col, _WORD)
        shift = np.uint64(bit)
        below = np.flatnonzero((aug[r:, word] >> shift) & np.uint64(1))
        if below.size == 0:
            continue
        p = r + int(below[0])
        if p != r:
            aug[[r, p]] = aug[[p, r]]
        hits = np.flatnonzero((aug[:, word] >> shift) & np.uint64(1))
        hits = hits[hits != r]
        if hits.size:
            aug[hits] ^= aug[r]
        pivots.append(col)
        r += 1

    reduced = _unpack(aug)
    for row in reduced[r:]:
        if row >> cols & 1:
            return None

    particular = 0
    for i, col in enumerate(pivots):
        if reduced[i] >> cols & 1:
            particular |= 1 << col
    pivot_set = set(pivots)
    basis = []
    for f in range(cols):
        if f in pivot_set:
            continue
        vec = 1 << f
        for i, col in enumerate(pivots):
            if reduced[i] >> f & 1:
                vec |= 1 << col
        basis.append(vec)
    return Gf2Solution(particular, tuple(basis), cols)


def _greedy_max_weight(sol: Gf2Solution) -> int:
    # Flip each kernel vector, in basis order, when that strictly grows |x|.
    x = sol.particular
    for vec in sol.nullspace_basis:
        y = x ^ vec
        if y.bit_count() > x.bit_count():
            x = y
    return x


def gallai_system(g: Graph, odd: bool) -> tuple[BitMatrix, int]:
    """``(A + D) x = d`` (``odd=False``) or ``(A + D + I) x = d`` (``odd=True``)."""
    rows = []
    parity = 0
    for v, row in enumerate(g.rows):
        dv = row.bit_count() & 1
        if dv:
            parity |= 1 << v
        diag = dv ^ 1 if odd else dv
        rows.append(row | (1 << v) if diag else row)
    return BitMatrix(g.n, g.n, rows), parity


def _solve_partition(g: Graph, odd: bool) -> int:
    m, d = gallai_system(g, odd)
    sol = solve_gf2(m, d)
    if sol is None:
        which = "odd/even" if odd else "even/even"
        raise InternalDefect(f"Gallai {which} system inconsistent on {g!r}")
    return _greedy_max_weight(sol)


def _all_parity(g: Graph, mask: int, want: int) -> bool:
    rows = g.rows
    return all((rows[v] & mask).bit_count() & 1 == want for v in iter_bits(mask))


def gallai_even_even(g: Graph) -> tuple[VertexSet, VertexSet]:
    """Partition ``V = V1 + V2`` with both induced subgraphs all-even."""
    v1 = _solve_partition(g, odd=False)
    v2 = g.all_mask & ~v1
    if not (_all_parity(g, v1, 0) and _all_parity(g, v2, 0)):
        raise InternalDefect("even/even partition failed degree check")
    return VertexSet(g.n, v1), VertexSet(g.n, v2)


def gallai_odd_even(g: Graph) -> tuple[VertexSet, VertexSet]:
    """Partition ``V = Vo + Ve`` with ``G[Vo]`` all-odd and ``G[Ve]`` all-even.

    ``|Vo|`` is greedily enlarged over the solution space.
    """
    vo = _solve_partition(g, odd=True)
    ve = g.all_mask & ~vo
    if not (_all_parity(g, vo, 1) and _all_parity(g, ve, 0)):
        raise InternalDefect("odd/even partition failed degree check")
    return VertexSet(g.n, vo), VertexSet(g.n, ve)


def larger_even_side(g: Graph) -> VertexSet:
    """The larger part of the even/even partition (first part on ties)."""
    v1, v2 = gallai_even_even(g)
    return v1 if len(v1) >= len(v2) else v2
