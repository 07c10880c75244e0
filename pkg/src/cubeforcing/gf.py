"""
Dense matrices over GF(2) and GF(3) with bit-packed rows.

Each row is stored as 64-bit words. GF(2) uses a single bitplane. GF(3) uses
two bitplanes ``lo``/``hi`` with the encoding 0 -> (0, 0), 1 -> (1, 0),
2 -> (0, 1), so negation is a plane swap and addition is six word operations.
Column ``j`` lives in word ``j >> 6``, bit ``j & 63``.
"""

from __future__ import annotations

import numpy as np
from numba import njit

__all__ = [
    "FIELDS",
    "GFMatrix",
    "identity",
    "zeros",
    "mat_mul",
    "rank",
    "inverse",
    "det",
    "block2x2",
    "scalar_mul",
    "loads",
    "dumps",
]

FIELDS = (2, 3)
WORD = 64


def _check_field(p: int) -> int:
    if p not in FIELDS:
        raise ValueError(f"unsupported field GF({p}); expected one of {FIELDS}")
    return int(p)


def _nwords(cols: int) -> int:
    return (cols + WORD - 1) // WORD


def _pack(bits: np.ndarray) -> np.ndarray:
    """Pack a (rows, cols) 0/1 array into (rows, words) uint64, little bit order."""
    rows, cols = bits.shape
    padded = np.zeros((rows, _nwords(cols) * WORD), dtype=np.uint8)
    padded[:, :cols] = bits
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view("<u8").astype(np.uint64, copy=False)


def _unpack(words: np.ndarray, cols: int) -> np.ndarray:
    raw = np.ascontiguousarray(words).view(np.uint8)
    return np.unpackbits(raw, axis=1, bitorder="little")[:, :cols]


# ---------------------------------------------------------------------------
# Word-parallel kernels
# ---------------------------------------------------------------------------


@njit(cache=True)
def _gf3_add_into(dlo, dhi, slo, shi, w0):
    # d += s over GF(3), words w0..end
    for w in range(w0, dlo.shape[0]):
        a1 = dlo[w]
        a2 = dhi[w]
        b1 = slo[w]
        b2 = shi[w]
        t = (a1 | b2) ^ (a2 | b1)
        dlo[w] = (a2 | b2) ^ t
        dhi[w] = (a1 | b1) ^ t


@njit(cache=True)
def _gf3_eliminate(lo, hi, ncols, full):
    """In-place elimination over GF(3).

    Pivot rule: columns left to right, first nonzero row at or below the
    current pivot row. With ``full`` the pivot column is cleared above the
    pivot too (reduced row echelon form). Returns ``(rank, acc)`` where
    ``acc`` is the determinant when the scanned block is square and of full
    rank.
    """
    nrows = lo.shape[0]
    one = np.uint64(1)
    r = 0
    acc = 1
    for c in range(ncols):
        if r == nrows:
            break
        w = c >> 6
        bit = one << np.uint64(c & 63)
        piv = -1
        for i in range(r, nrows):
            if (lo[i, w] | hi[i, w]) & bit:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for k in range(w, lo.shape[1]):
                t = lo[r, k]
                lo[r, k] = lo[piv, k]
                lo[piv, k] = t
                t = hi[r, k]
                hi[r, k] = hi[piv, k]
                hi[piv, k] = t
            acc = (3 - acc) % 3
        if hi[r, w] & bit:
            # scale pivot row by 2 so the pivot entry becomes 1
            acc = (acc * 2) % 3
            for k in range(w, lo.shape[1]):
                t = lo[r, k]
                lo[r, k] = hi[r, k]
                hi[r, k] = t
        prow_lo = lo[r]
        prow_hi = hi[r]
        start = 0 if full else r + 1
        for i in range(start, nrows):
            if i == r:
                continue
            if lo[i, w] & bit:
                # row_i -= pivot  ==  row_i += (-pivot)
                _gf3_add_into(lo[i], hi[i], prow_hi, prow_lo, w)
            elif hi[i, w] & bit:
                _gf3_add_into(lo[i], hi[i], prow_lo, prow_hi, w)
        r += 1
    return r, acc


@njit(cache=True)
def _gf2_eliminate(lo, ncols, full):
    nrows = lo.shape[0]
    one = np.uint64(1)
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        w = c >> 6
        bit = one << np.uint64(c & 63)
        piv = -1
        for i in range(r, nrows):
            if lo[i, w] & bit:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for k in range(w, lo.shape[1]):
                t = lo[r, k]
                lo[r, k] = lo[piv, k]
                lo[piv, k] = t
        start = 0 if full else r + 1
        for i in range(start, nrows):
            if i != r and lo[i, w] & bit:
                for k in range(w, lo.shape[1]):
                    lo[i, k] ^= lo[r, k]
        r += 1
    return r, 1


@njit(cache=True)
def _gf3_matmul(alo, ahi, acols, blo, bhi, clo, chi):
    one = np.uint64(1)
    for i in range(alo.shape[0]):
        for k in range(acols):
            w = k >> 6
            bit = one << np.uint64(k & 63)
            if alo[i, w] & bit:
                _gf3_add_into(clo[i], chi[i], blo[k], bhi[k], 0)
            elif ahi[i, w] & bit:
                _gf3_add_into(clo[i], chi[i], bhi[k], blo[k], 0)


@njit(cache=True)
def _gf2_matmul(alo, acols, blo, clo):
    one = np.uint64(1)
    for i in range(alo.shape[0]):
        for k in range(acols):
            if alo[i, k >> 6] & (one << np.uint64(k & 63)):
                for w in range(clo.shape[1]):
                    clo[i, w] ^= blo[k, w]


# ---------------------------------------------------------------------------
# Matrix type
# ---------------------------------------------------------------------------


class GFMatrix:
    """Immutable dense matrix over GF(p), p in {2, 3}.

    ``lo`` and ``hi`` are read-only ``(rows, words)`` uint64 bitplanes; ``hi``
    is ``None`` over GF(2).
    """

    __slots__ = ("p", "rows", "cols", "lo", "hi")

    def __init__(self, p: int, rows: int, cols: int, lo: np.ndarray, hi: np.ndarray | None):
        self.p = _check_field(p)
        if rows < 1 or cols < 1:
            raise ValueError(f"matrix dimensions must be positive, got {rows}x{cols}")
        if (p == 3) != (hi is not None):
            raise ValueError("GF(3) needs two bitplanes, GF(2) exactly one")
        self.rows = rows
        self.cols = cols
        lo.flags.writeable = False
        if hi is not None:
            hi.flags.writeable = False
        self.lo = lo
        self.hi = hi

    @classmethod
    def from_array(cls, values, p: int) -> GFMatrix:
        """Build from any 2-D integer array-like; entries are reduced mod p."""
        p = _check_field(p)
        arr = np.asarray(values, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError(f"expected a 2-D array, got shape {arr.shape}")
        arr = np.mod(arr, p).astype(np.uint8)
        rows, cols = arr.shape
        if p == 2:
            return cls(2, rows, cols, _pack(arr), None)
        return cls(3, rows, cols, _pack(arr == 1), _pack(arr == 2))

    def to_array(self) -> np.ndarray:
        """Dense ``(rows, cols)`` uint8 array of field elements."""
        out = _unpack(self.lo, self.cols).copy()
        if self.hi is not None:
            out += 2 * _unpack(self.hi, self.cols)
        return out

    def tolist(self) -> list[list[int]]:
        return self.to_array().tolist()

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"entry ({i}, {j}) outside {self.rows}x{self.cols}")
        w, b = divmod(j, WORD)
        v = int(self.lo[i, w] >> np.uint64(b)) & 1
        if self.hi is not None:
            v += 2 * (int(self.hi[i, w] >> np.uint64(b)) & 1)
        return v

    def __eq__(self, other) -> bool:
        if not isinstance(other, GFMatrix):
            return NotImplemented
        if (self.p, self.rows, self.cols) != (other.p, other.rows, other.cols):
            return False
        if not np.array_equal(self.lo, other.lo):
            return False
        return self.hi is None or np.array_equal(self.hi, other.hi)

    __hash__ = None

    def __repr__(self) -> str:
        if self.rows * self.cols <= 64:
            return f"GFMatrix(p={self.p}, {self.tolist()})"
        return f"GFMatrix(p={self.p}, {self.rows}x{self.cols})"

    def __matmul__(self, other: GFMatrix) -> GFMatrix:
        return mat_mul(self, other)

    def nonzero_mask(self) -> np.ndarray:
        """Boolean array marking nonzero entries."""
        mask = self.lo if self.hi is None else self.lo | self.hi
        return _unpack(mask, self.cols).astype(bool)

    def submatrix(self, row_idx, col_idx) -> GFMatrix:
        return GFMatrix.from_array(self.to_array()[np.ix_(row_idx, col_idx)], self.p)

    def transpose(self) -> GFMatrix:
        return GFMatrix.from_array(self.to_array().T, self.p)

    def rank(self) -> int:
        return rank(self)

    def det(self) -> int:
        return det(self)

    def inverse(self) -> GFMatrix | None:
        return inverse(self)

    def _planes_copy(self):
        lo = self.lo.copy()
        hi = None if self.hi is None else self.hi.copy()
        return lo, hi


def identity(k: int, p: int) -> GFMatrix:
    if k < 1:
        raise ValueError(f"identity size must be >= 1, got {k}")
    return GFMatrix.from_array(np.eye(k, dtype=np.uint8), p)


def zeros(rows: int, cols: int, p: int) -> GFMatrix:
    return GFMatrix.from_array(np.zeros((rows, cols), dtype=np.uint8), p)


def _same_field(*ms: GFMatrix) -> int:
    ps = {m.p for m in ms}
    if len(ps) != 1:
        raise ValueError(f"modulus mismatch: {sorted(ps)}")
    return ps.pop()


def mat_mul(a: GFMatrix, b: GFMatrix) -> GFMatrix:
    """Matrix product over GF(p), accumulating rows of ``b`` per nonzero of ``a``."""
    p = _same_field(a, b)
    if a.cols != b.rows:
        raise ValueError(f"dimension mismatch: {a.rows}x{a.cols} times {b.rows}x{b.cols}")
    words = _nwords(b.cols)
    clo = np.zeros((a.rows, words), dtype=np.uint64)
    if p == 2:
        _gf2_matmul(a.lo, a.cols, b.lo, clo)
        return GFMatrix(2, a.rows, b.cols, clo, None)
    chi = np.zeros_like(clo)
    _gf3_matmul(a.lo, a.hi, a.cols, b.lo, b.hi, clo, chi)
    return GFMatrix(3, a.rows, b.cols, clo, chi)


def _eliminate(lo, hi, ncols: int, full: bool) -> tuple[int, int]:
    if hi is None:
        r, acc = _gf2_eliminate(lo, ncols, full)
    else:
        r, acc = _gf3_eliminate(lo, hi, ncols, full)
    return int(r), int(acc)


def rank(m: GFMatrix) -> int:
    lo, hi = m._planes_copy()
    return _eliminate(lo, hi, m.cols, False)[0]


def det(m: GFMatrix) -> int:
    if m.rows != m.cols:
        raise ValueError(f"determinant needs a square matrix, got {m.rows}x{m.cols}")
    lo, hi = m._planes_copy()
    r, acc = _eliminate(lo, hi, m.cols, False)
    return acc % m.p if r == m.rows else 0


def inverse(m: GFMatrix) -> GFMatrix | None:
    """Inverse by Gauss-Jordan on ``[m | I]``; ``None`` when ``m`` is singular."""
    if m.rows != m.cols:
        raise ValueError(f"inverse needs a square matrix, got {m.rows}x{m.cols}")
    n = m.rows
    aug = np.concatenate([m.to_array(), np.eye(n, dtype=np.uint8)], axis=1)
    work = GFMatrix.from_array(aug, m.p)
    lo, hi = work._planes_copy()
    r, _ = _eliminate(lo, hi, n, True)
    if r < n:
        return None
    inv = GFMatrix(m.p, n, 2 * n, lo, hi).to_array()[:, n:]
    return GFMatrix.from_array(inv, m.p)


def block2x2(tl: GFMatrix, tr: GFMatrix, bl: GFMatrix, br: GFMatrix) -> GFMatrix:
    """Assemble ``[[tl, tr], [bl, br]]``."""
    p = _same_field(tl, tr, bl, br)
    if tl.rows != tr.rows or bl.rows != br.rows or tl.cols != bl.cols or tr.cols != br.cols:
        raise ValueError(
            "block dimension mismatch: "
            f"{tl.shape} {tr.shape} / {bl.shape} {br.shape}"
        )
    return GFMatrix.from_array(
        np.block([[tl.to_array(), tr.to_array()], [bl.to_array(), br.to_array()]]), p
    )


def scalar_mul(c: int, m: GFMatrix) -> GFMatrix:
    if not 0 <= c < m.p:
        raise ValueError(f"scalar {c} is not an element of GF({m.p})")
    if c == 0:
        return zeros(m.rows, m.cols, m.p)
    if c == 1 or m.p == 2:
        return m
    # c == 2 over GF(3): swap planes
    return GFMatrix(3, m.rows, m.cols, m.hi.copy(), m.lo.copy())


# ---------------------------------------------------------------------------
# Text format: "gfp <p> <rows> <cols>" then one digit string per row
# ---------------------------------------------------------------------------


def dumps(m: GFMatrix) -> str:
    arr = m.to_array()
    digits = (arr + ord("0")).astype(np.uint8)
    lines = [f"gfp {m.p} {m.rows} {m.cols}"]
    lines.extend(row.tobytes().decode("ascii") for row in digits)
    return "\n".join(lines) + "\n"


def loads(text: str) -> GFMatrix:
    lines = text.splitlines()
    if not lines:
        raise ValueError("empty matrix text")
    head = lines[0].split(" ")
    if len(head) != 4 or head[0] != "gfp":
        raise ValueError(f"bad header line: {lines[0]!r}")
    try:
        p, rows, cols = (int(x) for x in head[1:])
    except ValueError as exc:
        raise ValueError(f"bad header line: {lines[0]!r}") from exc
    _check_field(p)
    body = lines[1:]
    if len(body) != rows:
        raise ValueError(f"expected {rows} rows, found {len(body)}")
    arr = np.empty((rows, cols), dtype=np.uint8)
    for i, line in enumerate(body):
        if len(line) != cols or not line.isdigit():
            raise ValueError(f"row {i}: expected {cols} digits, got {line!r}")
        row = np.frombuffer(line.encode("ascii"), dtype=np.uint8) - ord("0")
        if row.max(initial=0) >= p:
            raise ValueError(f"row {i}: digit outside GF({p})")
        arr[i] = row
    return GFMatrix.from_array(arr, p)
