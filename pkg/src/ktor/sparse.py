"""Sparse matrices over F2[H] with bitmask polynomial entries.

Stored column-wise: ``cols[j] = {i: bits}`` with ``bits != 0``.  Column j
is the image of the j-th source basis vector.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .ring import Poly, clmul


class SparseMatrix:
    __slots__ = ("nrows", "ncols", "cols")

    def __init__(self, nrows: int, ncols: int, cols: dict[int, dict[int, int]] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.cols = cols if cols is not None else {}

    @classmethod
    def identity(cls, n: int, scale: int = 1) -> "SparseMatrix":
        return cls(n, n, {j: {j: scale} for j in range(n)} if scale else {})

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "SparseMatrix":
        return cls(nrows, ncols)

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries: Iterable[tuple[int, int, int]]) -> "SparseMatrix":
        m = cls(nrows, ncols)
        for i, j, bits in entries:
            m.add_entry(i, j, bits)
        return m

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def add_entry(self, i: int, j: int, bits: int) -> None:
        if not bits:
            return
        col = self.cols.setdefault(j, {})
        new = col.get(i, 0) ^ bits
        if new:
            col[i] = new
        else:
            del col[i]
            if not col:
                del self.cols[j]

    def get(self, i: int, j: int) -> Poly:
        return Poly(self.cols.get(j, {}).get(i, 0))

    def entries(self) -> Iterator[tuple[int, int, int]]:
        for j in sorted(self.cols):
            col = self.cols[j]
            for i in sorted(col):
                yield i, j, col[i]

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols.values())

    def is_zero(self) -> bool:
        return not self.cols

    def copy(self) -> "SparseMatrix":
        return SparseMatrix(self.nrows, self.ncols, {j: dict(c) for j, c in self.cols.items()})

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        self._check_same(other)
        out = self.copy()
        for j, col in other.cols.items():
            for i, bits in col.items():
                out.add_entry(i, j, bits)
        return out

    __sub__ = __add__

    def scale(self, p: Poly | int) -> "SparseMatrix":
        bits = p.bits if isinstance(p, Poly) else p
        out = SparseMatrix(self.nrows, self.ncols)
        if bits:
            for j, col in self.cols.items():
                out.cols[j] = {i: clmul(b, bits) for i, b in col.items()}
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = SparseMatrix(self.nrows, other.ncols)
        mine = self.cols
        for j, col in other.cols.items():
            acc: dict[int, int] = {}
            for k, b in col.items():
                src = mine.get(k)
                if not src:
                    continue
                if b == 1:
                    for i, a in src.items():
                        acc[i] = acc.get(i, 0) ^ a
                else:
                    for i, a in src.items():
                        acc[i] = acc.get(i, 0) ^ clmul(a, b)
            acc = {i: v for i, v in acc.items() if v}
            if acc:
                out.cols[j] = acc
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self.cols == other.cols

    def first_difference(self, other: "SparseMatrix") -> tuple[int, int, Poly, Poly] | None:
        """A witness entry where the two matrices differ, or None."""
        self._check_same(other)
        for j in sorted(set(self.cols) | set(other.cols)):
            a, b = self.cols.get(j, {}), other.cols.get(j, {})
            for i in sorted(set(a) | set(b)):
                if a.get(i, 0) != b.get(i, 0):
                    return i, j, Poly(a.get(i, 0)), Poly(b.get(i, 0))
        return None

    def transpose(self) -> "SparseMatrix":
        out = SparseMatrix(self.ncols, self.nrows)
        for j, col in self.cols.items():
            for i, bits in col.items():
                out.cols.setdefault(i, {})[j] = bits
        return out

    def _check_same(self, other: "SparseMatrix") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __repr__(self) -> str:
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


def block(rows: list[list[SparseMatrix | None]], row_sizes: list[int], col_sizes: list[int]) -> SparseMatrix:
    """Assemble a block matrix; ``None`` blocks are zero."""
    roff = [sum(row_sizes[:k]) for k in range(len(row_sizes))]
    coff = [sum(col_sizes[:k]) for k in range(len(col_sizes))]
    out = SparseMatrix(sum(row_sizes), sum(col_sizes))
    for r, row in enumerate(rows):
        for c, blk in enumerate(row):
            if blk is None:
                continue
            if blk.shape != (row_sizes[r], col_sizes[c]):
                raise ValueError(f"block ({r},{c}) has shape {blk.shape}")
            for j, col in blk.cols.items():
                dst = out.cols.setdefault(coff[c] + j, {})
                for i, bits in col.items():
                    k = roff[r] + i
                    new = dst.get(k, 0) ^ bits
                    if new:
                        dst[k] = new
                    else:
                        dst.pop(k, None)
    out.cols = {j: c for j, c in out.cols.items() if c}
    return out
