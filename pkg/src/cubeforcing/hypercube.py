"""
The hypercube Q_n, its even/odd bipartition and its bipartite support pattern.

Vertices are bitmasks with the first sequence position in the most
significant bit, so lexicographic order of the 0/1 strings is numeric order.
Within either parity class the lexicographic index of ``bits`` is simply
``bits >> 1``: every aligned pair ``(2k, 2k+1)`` holds one vertex of each
parity.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering

import numpy as np

from .gf import GFMatrix, dumps, loads

__all__ = [
    "EVEN",
    "ODD",
    "Vertex",
    "Bipartition",
    "SupportPattern",
    "AssignmentError",
    "parity",
    "neighbors",
    "lex_index",
    "vertex_at",
    "bipartition",
    "support_matrix",
    "assign",
    "is_assignment",
]

EVEN = "even"
ODD = "odd"


@total_ordering
@dataclass(frozen=True)
class Vertex:
    """A vertex of Q_n: ``bits`` in ``[0, 2**n)``, first position = MSB."""

    n: int
    bits: int

    def __post_init__(self):
        if self.n < 1 or not 0 <= self.bits < (1 << self.n):
            raise ValueError(f"bits {self.bits} out of range for Q_{self.n}")

    @classmethod
    def parse(cls, s: str) -> Vertex:
        if not s or set(s) - {"0", "1"}:
            raise ValueError(f"not a 0/1 vertex string: {s!r}")
        return cls(len(s), int(s, 2))

    def __str__(self) -> str:
        return format(self.bits, f"0{self.n}b")

    def __lt__(self, other: Vertex) -> bool:
        return (self.n, self.bits) < (other.n, other.bits)


def parity(v: Vertex) -> str:
    return ODD if v.bits.bit_count() & 1 else EVEN


def neighbors(v: Vertex) -> list[Vertex]:
    """The n neighbours of ``v``, flipping position 1 first."""
    return [Vertex(v.n, v.bits ^ (1 << (v.n - 1 - i))) for i in range(v.n)]


def lex_index(v: Vertex) -> tuple[str, int]:
    return parity(v), v.bits >> 1


def vertex_at(n: int, part: str, index: int) -> Vertex:
    """Inverse of :func:`lex_index`."""
    if part not in (EVEN, ODD):
        raise ValueError(f"part must be {EVEN!r} or {ODD!r}, got {part!r}")
    if not 0 <= index < (1 << (n - 1)):
        raise ValueError(f"index {index} out of range for Q_{n}")
    bits = index << 1
    want = 1 if part == ODD else 0
    if bits.bit_count() & 1 != want:
        bits |= 1
    return Vertex(n, bits)


@dataclass(frozen=True)
class Bipartition:
    n: int
    even_part: tuple[Vertex, ...]
    odd_part: tuple[Vertex, ...]


def _part_bits(n: int) -> tuple[np.ndarray, np.ndarray]:
    allv = np.arange(1 << n, dtype=np.int64)
    odd = np.bitwise_count(allv) & 1
    return allv[odd == 0], allv[odd == 1]


def bipartition(n: int) -> Bipartition:
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    ev, od = _part_bits(n)
    return Bipartition(
        n,
        tuple(Vertex(n, int(b)) for b in ev),
        tuple(Vertex(n, int(b)) for b in od),
    )


class AssignmentError(ValueError):
    """Values do not match a support pattern; ``coord`` is the first bad entry."""

    def __init__(self, message: str, coord: tuple[int, int] | None = None):
        super().__init__(message)
        self.coord = coord


class SupportPattern:
    """0/1 pattern of a weighted bipartite adjacency matrix (1 = edge present)."""

    __slots__ = ("present",)

    def __init__(self, present):
        arr = np.asarray(present, dtype=bool)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"support pattern must be a non-empty 2-D array, got {arr.shape}")
        arr.flags.writeable = False
        self.present = arr

    @property
    def rows(self) -> int:
        return self.present.shape[0]

    @property
    def cols(self) -> int:
        return self.present.shape[1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, SupportPattern):
            return NotImplemented
        return np.array_equal(self.present, other.present)

    __hash__ = None

    def __repr__(self) -> str:
        return f"SupportPattern({self.rows}x{self.cols}, ones={int(self.present.sum())})"

    def as_matrix(self, p: int = 2) -> GFMatrix:
        """The pattern with every ``w`` replaced by 1, over GF(p)."""
        return GFMatrix.from_array(self.present.astype(np.uint8), p)

    def submatrix(self, row_idx, col_idx) -> SupportPattern:
        return SupportPattern(self.present[np.ix_(row_idx, col_idx)])

    @classmethod
    def block2x2(cls, tl, tr, bl, br) -> SupportPattern:
        return cls(np.block([[tl.present, tr.present], [bl.present, br.present]]))

    @classmethod
    def identity(cls, k: int) -> SupportPattern:
        return cls(np.eye(k, dtype=bool))

    def dumps(self) -> str:
        return dumps(self.as_matrix(2))

    @classmethod
    def loads(cls, text: str) -> SupportPattern:
        m = loads(text)
        if m.p != 2:
            raise ValueError(f"support patterns are stored with a gfp 2 header, got p={m.p}")
        return cls(m.to_array())


def support_matrix(n: int) -> SupportPattern:
    """Support of W_n: rows E_n, columns O_n, both in lexicographic order."""
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    ev, _ = _part_bits(n)
    half = 1 << (n - 1)
    present = np.zeros((half, half), dtype=bool)
    rows = np.arange(half)
    for k in range(n):
        present[rows, (ev ^ (1 << k)) >> 1] = True
    return SupportPattern(present)


def _first_mismatch(s: SupportPattern, values: GFMatrix) -> tuple[int, int] | None:
    if values.shape != (s.rows, s.cols):
        raise AssignmentError(
            f"shape mismatch: pattern {s.rows}x{s.cols}, values {values.rows}x{values.cols}"
        )
    bad = np.argwhere(values.nonzero_mask() != s.present)
    if len(bad) == 0:
        return None
    i, j = bad[0]
    return int(i), int(j)


def assign(s: SupportPattern, values: GFMatrix) -> GFMatrix:
    """Check that ``values`` is a nonzero assignment of ``s`` and return it.

    Raises :class:`AssignmentError` carrying the first offending coordinate
    in row-major order.
    """
    coord = _first_mismatch(s, values)
    if coord is not None:
        i, j = coord
        what = "zero on the support" if s.present[i, j] else "nonzero off the support"
        raise AssignmentError(f"mismatch at ({i},{j}): {what}", coord)
    return values


def is_assignment(s: SupportPattern, values: GFMatrix) -> bool:
    try:
        return _first_mismatch(s, values) is None
    except AssignmentError:
        return False
