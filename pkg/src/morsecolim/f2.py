"""Exact linear algebra over the two-element field.

Matrices store each row as a Python int (bit j = column j), so rows are
bit-packed at every width and row operations are single XORs.  Vectors are
plain ints with the length carried by the caller.  Row reduction always
picks the leftmost available pivot column and, within it, the lowest
remaining row, so every derived object (solutions, kernel bases, image
bases) is deterministic.
"""

from __future__ import annotations

from typing import Iterable, Sequence


def vec_from_bits(bits: Iterable[int]) -> int:
    """Pack an iterable of 0/1 coordinates into an int vector."""
    v = 0
    for j, b in enumerate(bits):
        if b & 1:
            v |= 1 << j
    return v


def vec_to_bits(v: int, length: int) -> list[int]:
    """Unpack an int vector into a list of 0/1 coordinates."""
    return [(v >> j) & 1 for j in range(length)]


def _parity(x: int) -> int:
    return x.bit_count() & 1


class F2Matrix:
    """Immutable matrix over GF(2) with bit-packed rows."""

    __slots__ = ("nrows", "ncols", "_rows", "_rref")

    def __init__(self, nrows: int, ncols: int, rows: Sequence[int] = ()):
        if nrows < 0 or ncols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        rows = list(rows)
        if len(rows) > nrows:
            raise ValueError("more rows than nrows")
        rows.extend(0 for _ in range(nrows - len(rows)))
        mask = (1 << ncols) - 1
        for r in rows:
            if r & ~mask:
                raise ValueError("row has bits outside [0, ncols)")
        self.nrows = nrows
        self.ncols = ncols
        self._rows = tuple(rows)
        self._rref = None

    # ---- constructors -------------------------------------------------

    @classmethod
    def from_entries(cls, nrows: int, ncols: int,
                     entries: Iterable[tuple[int, int]]) -> "F2Matrix":
        rows = [0] * nrows
        for i, j in entries:
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise ValueError(f"entry ({i},{j}) out of range")
            rows[i] ^= 1 << j
        return cls(nrows, ncols, rows)

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[int]], ncols: int | None = None) -> "F2Matrix":
        nrows = len(dense)
        if ncols is None:
            ncols = len(dense[0]) if dense else 0
        return cls(nrows, ncols, [vec_from_bits(row) for row in dense])

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        return cls(n, n, [1 << j for j in range(n)])

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "F2Matrix":
        return cls(nrows, ncols)

    # ---- basic accessors ----------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def row(self, i: int) -> int:
        return self._rows[i]

    def column(self, j: int) -> int:
        if not 0 <= j < self.ncols:
            raise IndexError("column out of range")
        v = 0
        for i, r in enumerate(self._rows):
            if (r >> j) & 1:
                v |= 1 << i
        return v

    def entry(self, i: int, j: int) -> int:
        return (self._rows[i] >> j) & 1

    def entries(self) -> list[tuple[int, int]]:
        """Sorted positions holding 1."""
        out = []
        for i, r in enumerate(self._rows):
            while r:
                low = r & -r
                out.append((i, low.bit_length() - 1))
                r ^= low
        return out

    def is_zero(self) -> bool:
        return not any(self._rows)

    def to_dense(self) -> list[list[int]]:
        return [vec_to_bits(r, self.ncols) for r in self._rows]

    # ---- algebra -------------------------------------------------------

    def __add__(self, other: "F2Matrix") -> "F2Matrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return F2Matrix(self.nrows, self.ncols,
                        [a ^ b for a, b in zip(self._rows, other._rows)])

    def __matmul__(self, other: "F2Matrix") -> "F2Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        rows = []
        for r in self._rows:
            acc = 0
            rr = r
            while rr:
                low = rr & -rr
                acc ^= other._rows[low.bit_length() - 1]
                rr ^= low
            rows.append(acc)
        return F2Matrix(self.nrows, other.ncols, rows)

    def mul_vec(self, x: int) -> int:
        """Matrix-vector product; x is a column vector of length ncols."""
        v = 0
        for i, r in enumerate(self._rows):
            if _parity(r & x):
                v |= 1 << i
        return v

    def transpose(self) -> "F2Matrix":
        return F2Matrix(self.ncols, self.nrows,
                        [self.column(j) for j in range(self.ncols)])

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, F2Matrix) and self.shape == other.shape
                and self._rows == other._rows)

    def __hash__(self) -> int:
        return hash((self.nrows, self.ncols, self._rows))

    def __repr__(self) -> str:
        return f"F2Matrix({self.nrows}x{self.ncols}, {len(self.entries())} ones)"

    # ---- elimination ----------------------------------------------------

    def _reduced(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Reduced row echelon form: (rows, pivot column indices).

        Pivoting rule: leftmost column first, lowest row within it.
        """
        if self._rref is not None:
            return self._rref
        rows = list(self._rows)
        pivots = []
        r = 0
        for c in range(self.ncols):
            sel = -1
            for i in range(r, self.nrows):
                if (rows[i] >> c) & 1:
                    sel = i
                    break
            if sel < 0:
                continue
            rows[r], rows[sel] = rows[sel], rows[r]
            for i in range(self.nrows):
                if i != r and (rows[i] >> c) & 1:
                    rows[i] ^= rows[r]
            pivots.append(c)
            r += 1
            if r == self.nrows:
                break
        self._rref = (tuple(rows), tuple(pivots))
        return self._rref

    def rank(self) -> int:
        return len(self._reduced()[1])

    def solve(self, b: int) -> int | None:
        """One solution x of self·x = b, or None when b is not in the image.

        Free variables are set to 0, so the result is deterministic.
        """
        if b & ~((1 << self.nrows) - 1):
            raise ValueError("rhs has bits outside [0, nrows)")
        # Row-reduce the augmented matrix [self | b].
        aug = F2Matrix(self.nrows, self.ncols + 1,
                       [r | (((b >> i) & 1) << self.ncols)
                        for i, r in enumerate(self._rows)])
        rows, pivots = aug._reduced()
        col_mask = (1 << self.ncols) - 1
        x = 0
        for r, c in zip(rows, pivots):
            if c == self.ncols:
                return None  # row 0...0 | 1
            if (r >> self.ncols) & 1:
                x |= 1 << c
        return x

    def kernel_basis(self) -> list[int]:
        """Deterministic basis of the null space, one vector per free column."""
        rows, pivots = self._reduced()
        pivot_set = set(pivots)
        basis = []
        for f in range(self.ncols):
            if f in pivot_set:
                continue
            v = 1 << f
            for r, p in zip(rows, pivots):
                if (r >> f) & 1:
                    v |= 1 << p
            basis.append(v)
        return basis

    def image_basis(self) -> list[int]:
        """Basis of the column space: the original pivot columns."""
        _, pivots = self._reduced()
        return [self.column(c) for c in pivots]


# ---- subspace helpers (vectors are bit-packed ints) ----------------------


def echelon_basis(vectors: Iterable[int]) -> list[int]:
    """Reduced echelon basis of the span, pivots at the lowest set bits."""
    basis: list[int] = []  # sorted by pivot (lowest bit)
    for v in vectors:
        v = reduce_vector(v, basis)
        if v:
            p = v & -v
            basis = [b ^ v if b & p else b for b in basis]
            basis.append(v)
            basis.sort(key=lambda b: b & -b)
    return basis


def reduce_vector(v: int, basis: Iterable[int]) -> int:
    """Reduce v against an echelon basis (pivot = lowest set bit)."""
    for b in basis:
        if v & (b & -b):
            v ^= b
    return v


def span_rank(vectors: Iterable[int]) -> int:
    return len(echelon_basis(vectors))


def intersection_dim(u: Sequence[int], w: Sequence[int]) -> int:
    """dim(span u ∩ span w) via dim U + dim W - dim(U + W)."""
    ru = span_rank(u)
    rw = span_rank(w)
    return ru + rw - span_rank(list(u) + list(w))
