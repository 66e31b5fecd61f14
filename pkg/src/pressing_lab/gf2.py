"""Dense linear algebra over GF(2).

Matrices are immutable, 1-indexed, and store each row as packed uint64
words (column j lives at word j >> 6, bit j & 63; padding bits are kept
zero).  The module provides the rank/minor machinery, a no-swap pivoting
discipline for LU and Cholesky, GF(2) Gram-Schmidt, and permutation
conjugation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import _kernels

_WORD_BITS = 64


def _words_needed(n_cols: int) -> int:
    return (n_cols + _WORD_BITS - 1) >> 6


def _pack_bits(bits: np.ndarray) -> np.ndarray:
    # bits: (r, c) array of 0/1, uint8. Little bit order inside little-endian
    # words, so logical column j lands at word j >> 6, bit j & 63.
    r, c = bits.shape
    padded = np.zeros((r, _words_needed(c) * _WORD_BITS), dtype=np.uint8)
    padded[:, :c] = bits
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view(np.uint64)


def _unpack_words(words: np.ndarray, n_cols: int) -> np.ndarray:
    u8 = np.ascontiguousarray(words).view(np.uint8)
    return np.unpackbits(u8, axis=1, bitorder="little")[:, :n_cols]


class Gf2Matrix:
    """An n_rows x n_cols matrix over GF(2). Immutable once built."""

    __slots__ = ("n_rows", "n_cols", "_words", "_hash")

    def __init__(self, rows: Sequence[Sequence[int]]) -> None:
        row_list = [list(r) for r in rows]
        if not row_list:
            raise ValueError("matrix needs at least one row")
        n_cols = len(row_list[0])
        if n_cols == 0:
            raise ValueError("matrix needs at least one column")
        if any(len(r) != n_cols for r in row_list):
            raise ValueError("rows have unequal lengths")
        for r in row_list:
            for v in r:
                if not (v == 0 or v == 1):
                    raise ValueError("entries must be 0 or 1")
        mat = np.asarray(row_list, dtype=np.uint8)
        self.n_rows = len(row_list)
        self.n_cols = n_cols
        self._words = _pack_bits(mat)
        self._words.setflags(write=False)
        self._hash: Optional[int] = None

    @classmethod
    def _from_words(cls, words: np.ndarray, n_rows: int, n_cols: int) -> "Gf2Matrix":
        m = object.__new__(cls)
        m.n_rows = n_rows
        m.n_cols = n_cols
        m._words = words
        m._words.setflags(write=False)
        m._hash = None
        return m

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int) -> "Gf2Matrix":
        if n_rows < 1 or n_cols < 1:
            raise ValueError("dimensions must be positive")
        words = np.zeros((n_rows, _words_needed(n_cols)), dtype=np.uint64)
        return cls._from_words(words, n_rows, n_cols)

    @classmethod
    def identity(cls, n: int) -> "Gf2Matrix":
        if n < 1:
            raise ValueError("dimension must be positive")
        words = np.zeros((n, _words_needed(n)), dtype=np.uint64)
        for i in range(n):
            words[i, i >> 6] = np.uint64(1) << np.uint64(i & 63)
        return cls._from_words(words, n, n)

    @classmethod
    def from_array(cls, arr) -> "Gf2Matrix":
        """Build from a 2-D array of 0/1 entries, validated in bulk.

        The fast path for large matrices; the constructor checks entry by
        entry in Python.
        """
        a = np.asarray(arr)
        if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
            raise ValueError("need a nonempty 2-D array")
        if not ((a == 0) | (a == 1)).all():
            raise ValueError("entries must be 0 or 1")
        packed = _pack_bits(np.ascontiguousarray(a.astype(np.uint8)))
        return cls._from_words(packed, a.shape[0], a.shape[1])

    @classmethod
    def from_text(cls, text: str) -> "Gf2Matrix":
        """Parse the plain matrix format: a header line "n m", then n rows
        of m characters over {0,1}."""
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty matrix text")
        header = lines[0].split()
        if len(header) != 2:
            raise ValueError("header must be two integers: n m")
        try:
            n, m = int(header[0]), int(header[1])
        except ValueError:
            raise ValueError("header must be two integers: n m") from None
        if n < 1 or m < 1:
            raise ValueError("dimensions must be positive")
        if len(lines) - 1 != n:
            raise ValueError(f"expected {n} rows, found {len(lines) - 1}")
        rows = []
        for k, ln in enumerate(lines[1:], start=1):
            if len(ln) != m or any(ch not in "01" for ch in ln):
                raise ValueError(f"row {k} must be {m} characters over 01")
            rows.append([int(ch) for ch in ln])
        return cls(rows)

    def to_text(self) -> str:
        bits = _unpack_words(self._words, self.n_cols)
        body = "\n".join("".join(str(b) for b in row) for row in bits.tolist())
        return f"{self.n_rows} {self.n_cols}\n{body}\n"

    def get(self, i: int, j: int) -> int:
        """Entry at row i, column j, both 1-indexed."""
        if not (1 <= i <= self.n_rows and 1 <= j <= self.n_cols):
            raise IndexError(f"entry ({i},{j}) outside {self.n_rows}x{self.n_cols}")
        c = j - 1
        return int((int(self._words[i - 1, c >> 6]) >> (c & 63)) & 1)

    @property
    def rows(self) -> tuple:
        """Logical bit rows as a tuple of tuples of ints."""
        bits = _unpack_words(self._words, self.n_cols)
        return tuple(tuple(int(b) for b in row) for row in bits.tolist())

    def transpose(self) -> "Gf2Matrix":
        bits = _unpack_words(self._words, self.n_cols)
        return Gf2Matrix._from_words(
            _pack_bits(np.ascontiguousarray(bits.T)), self.n_cols, self.n_rows
        )

    def __matmul__(self, other: "Gf2Matrix") -> "Gf2Matrix":
        if not isinstance(other, Gf2Matrix):
            return NotImplemented
        if self.n_cols != other.n_rows:
            raise ValueError(
                f"cannot multiply {self.n_rows}x{self.n_cols} by "
                f"{other.n_rows}x{other.n_cols}"
            )
        out = _kernels.gf2_matmul(
            self._words, other._words, self.n_rows, self.n_cols, other._words.shape[1]
        )
        return Gf2Matrix._from_words(out, self.n_rows, other.n_cols)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Gf2Matrix):
            return NotImplemented
        return (
            self.n_rows == other.n_rows
            and self.n_cols == other.n_cols
            and bool(np.array_equal(self._words, other._words))
        )

    def __hash__(self) -> int:
        if self._hash is None:
            payload = (self.n_rows, self.n_cols, self._words.tobytes())
            object.__setattr__(self, "_hash", hash(payload))
        return self._hash  # type: ignore[return-value]

    def __repr__(self) -> str:
        return f"<Gf2Matrix {self.n_rows}x{self.n_cols}>"

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class PermutationMap:
    """A bijection on [n], stored as the image tuple (sigma(1), ..., sigma(n))."""

    image: tuple

    def __post_init__(self) -> None:
        img = tuple(int(v) for v in self.image)
        object.__setattr__(self, "image", img)
        n = len(img)
        if n == 0:
            raise ValueError("permutation needs at least one point")
        if sorted(img) != list(range(1, n + 1)):
            raise ValueError(f"image {img} is not a bijection on [{n}]")

    @property
    def n(self) -> int:
        return len(self.image)

    @classmethod
    def identity(cls, n: int) -> "PermutationMap":
        return cls(tuple(range(1, n + 1)))

    def __call__(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise IndexError(f"point {i} outside [{self.n}]")
        return self.image[i - 1]

    def inverse(self) -> "PermutationMap":
        inv = [0] * self.n
        for i, v in enumerate(self.image, start=1):
            inv[v - 1] = i
        return PermutationMap(tuple(inv))

    def compose(self, other: "PermutationMap") -> "PermutationMap":
        """Left-to-right application: (self.compose(other))(i) = self(other(i))."""
        if self.n != other.n:
            raise ValueError("permutation sizes differ")
        return PermutationMap(tuple(self.image[v - 1] for v in other.image))

    def to_matrix(self) -> Gf2Matrix:
        """Row i carries a single 1 at column sigma(i)."""
        n = self.n
        words = np.zeros((n, _words_needed(n)), dtype=np.uint64)
        for i, v in enumerate(self.image):
            c = v - 1
            words[i, c >> 6] |= np.uint64(1) << np.uint64(c & 63)
        return Gf2Matrix._from_words(words, n, n)


@dataclass(frozen=True)
class EliminationTrace:
    """Pivot bookkeeping from running elimination_step to exhaustion.

    s_list is strictly increasing; t_list need not be monotone for general
    input. steps, when retained, holds p + 1 snapshots from the input down
    to the all-zero matrix.
    """

    s_list: tuple
    t_list: tuple
    p: int
    steps: tuple = ()

    def __post_init__(self) -> None:
        if len(self.s_list) != self.p or len(self.t_list) != self.p:
            raise ValueError("s_list and t_list must both have length p")
        if any(a >= b for a, b in zip(self.s_list, self.s_list[1:])):
            raise ValueError("s_list must be strictly increasing")


def elimination_step(M: Gf2Matrix):
    """One application of the row-clearing operator.

    s is the topmost nonzero row, t the column of its leftmost 1, and row s
    is added to every row carrying a 1 in column t (including itself, so
    row s of the result is zero). Returns (result, s, t, U) with U the
    1-indexed set of changed rows.
    """
    W = M._words
    n_rows = M.n_rows
    s0 = -1
    for i in range(n_rows):
        if W[i].any():
            s0 = i
            break
    if s0 < 0:
        raise ValueError("no pivot: matrix is all-zero")
    t0 = -1
    for w in range(W.shape[1]):
        word = int(W[s0, w])
        if word:
            t0 = (w << 6) + ((word & -word).bit_length() - 1)
            break
    wc, bc = t0 >> 6, t0 & 63
    hit = [i for i in range(n_rows) if (int(W[i, wc]) >> bc) & 1]
    out = W.copy()
    out[hit] ^= W[s0]
    result = Gf2Matrix._from_words(out, n_rows, M.n_cols)
    return result, s0 + 1, t0 + 1, frozenset(i + 1 for i in hit)


def elimination_trace(M: Gf2Matrix, keep_steps: bool = False) -> EliminationTrace:
    """Run elimination_step until the all-zero matrix; p equals rank(M)."""
    s_list = []
    t_list = []
    steps = [M] if keep_steps else None
    cur = M
    while cur._words.any():
        cur, s, t, _ = elimination_step(cur)
        s_list.append(s)
        t_list.append(t)
        if steps is not None:
            steps.append(cur)
    return EliminationTrace(
        s_list=tuple(s_list),
        t_list=tuple(t_list),
        p=len(s_list),
        steps=tuple(steps) if steps is not None else (),
    )


def _require_square(M: Gf2Matrix, what: str) -> int:
    if M.n_rows != M.n_cols:
        raise ValueError(f"{what} needs a square matrix, got {M.n_rows}x{M.n_cols}")
    return M.n_rows


def is_lpn(M: Gf2Matrix) -> bool:
    """True iff the elimination pivots march straight down the diagonal,
    i.e. s_r = r and t_r = r for every step r.

    Equivalent to: the leading principal minors are nonzero exactly up to
    rank(M)."""
    _require_square(M, "is_lpn")
    tr = elimination_trace(M)
    return all(s == r and t == r for r, (s, t) in enumerate(zip(tr.s_list, tr.t_list), start=1))


def rank(M: Gf2Matrix) -> int:
    r, _ = _kernels.gf2_rank(M._words, M.n_rows, M.n_cols)
    return int(r)


def determinant(M: Gf2Matrix) -> int:
    n = _require_square(M, "determinant")
    return 1 if rank(M) == n else 0


def leading_principal_minors(M: Gf2Matrix) -> tuple:
    """Entry j (1-indexed) is the determinant of the leading j x j block."""
    n = _require_square(M, "leading_principal_minors")
    return tuple(int(b) for b in _kernels.gf2_leading_minors(M._words, n))


def lu_no_pivot(M: Gf2Matrix):
    """LU factorization with no row swaps, or None when elimination stalls.

    L is unit-lower-triangular. A zero pivot with a zero column below it is
    skipped (the row passes into U), so rank-deficient inputs can still
    factor; a zero pivot over a nonzero column is a stall.
    """
    n = _require_square(M, "lu_no_pivot")
    ok, L, U, _ = _kernels.gf2_lu_nopivot(M._words, n)
    if not ok:
        return None
    return (
        Gf2Matrix._from_words(L, n, n),
        Gf2Matrix._from_words(U, n, n),
    )


def cholesky(M: Gf2Matrix):
    """L with M = L L^T for symmetric M, or None when elimination stalls.

    Succeeds exactly when lu_no_pivot succeeds (same pivot discipline).
    diag(L) marks which steps pivoted; L is invertible iff the diagonal is
    all ones, which for the matrices of interest happens iff M is.
    """
    n = _require_square(M, "cholesky")
    if M != M.transpose():
        raise ValueError("cholesky needs a symmetric matrix")
    ok, L, _ = _kernels.gf2_cholesky(M._words, n)
    if not ok:
        return None
    return Gf2Matrix._from_words(L, n, n)


def orthogonalize(B: Gf2Matrix) -> Gf2Matrix:
    """Unnormalized Gram-Schmidt over GF(2), column by column.

    Column k+1 of the output is b_{k+1} plus every earlier output column
    whose dot product with b_{k+1} is odd. Always defined; the output is
    orthogonal iff no earlier stage went self-orthogonal with a dependent
    successor, which callers can test with is_orthogonal.
    """
    colrows = B.transpose()._words.copy()
    out, _ = _kernels.gf2_orthogonalize(colrows, B.n_cols)
    return Gf2Matrix._from_words(out, B.n_cols, B.n_rows).transpose()


def is_orthogonal(Q: Gf2Matrix) -> bool:
    """True iff Q^T Q = I."""
    n = _require_square(Q, "is_orthogonal")
    colrows = Q.transpose()._words
    return bool(_kernels.gf2_gram_identity(colrows, n))


def conjugate(M: Gf2Matrix, sigma: PermutationMap) -> Gf2Matrix:
    """M' with M'(i, j) = M(sigma(i), sigma(j)).

    Equals P M P^T for the permutation matrix P of to_matrix, so position 1
    of M' holds row and column sigma(1) of M.
    """
    n = _require_square(M, "conjugate")
    if sigma.n != n:
        raise ValueError(f"permutation on [{sigma.n}] cannot conjugate {n}x{n}")
    bits = _unpack_words(M._words, n)
    idx = np.asarray([v - 1 for v in sigma.image], dtype=np.intp)
    new_bits = np.ascontiguousarray(bits[np.ix_(idx, idx)])
    return Gf2Matrix._from_words(_pack_bits(new_bits), n, n)


def qu_factor(B: Gf2Matrix):
    """B = Q U with Q orthogonal and U upper-triangular, or None.

    Q is the Gram-Schmidt output and U = Q^T B; the factorization exists
    exactly when that Q passes is_orthogonal.
    """
    _require_square(B, "qu_factor")
    Q = orthogonalize(B)
    if not is_orthogonal(Q):
        return None
    return Q, Q.transpose() @ B
