"""Bit-packed linear algebra over GF(2).

Vectors are Python ints used as bitsets: bit ``j`` is the coordinate at
column ``j``.  A matrix is a list of such row ints plus a column count.
Arbitrary-precision ints give word-packed storage and XOR row operations for
free, so no hand-rolled word arrays are needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np


def parity(x: int) -> int:
    return x.bit_count() & 1


def bits(x: int) -> Iterable[int]:
    """Indices of set bits in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def from_indices(indices: Iterable[int]) -> int:
    v = 0
    for i in indices:
        v ^= 1 << i
    return v


def rref(rows: Sequence[int], ncols: int) -> list[tuple[int, int]]:
    """Reduced row echelon form.

    Returns ``(pivot_column, row)`` pairs sorted by pivot, where the pivot is
    the lowest set bit of the row and no other returned row has that bit set.
    """
    pivots: dict[int, int] = {}
    for r in rows:
        v = r & ((1 << ncols) - 1)
        # stored rows are fully reduced, so one pass clears every pivot
        for p, row in pivots.items():
            if (v >> p) & 1:
                v ^= row
        if v == 0:
            continue
        p = (v & -v).bit_length() - 1
        for q, row in pivots.items():
            if (row >> p) & 1:
                pivots[q] = row ^ v
        pivots[p] = v
    return sorted(pivots.items())


Eliminator = Callable[[Sequence[int], int], list[tuple[int, int]]]


@dataclass(frozen=True)
class Gf2Matrix:
    """Dense GF(2) matrix stored as one int bitset per row."""

    nrows: int
    ncols: int
    rows: tuple[int, ...]

    # swap point for a faster elimination kernel
    eliminate = staticmethod(rref)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Gf2Matrix":
        return cls(nrows, ncols, (0,) * nrows)

    @classmethod
    def from_dense(cls, array) -> "Gf2Matrix":
        a = np.asarray(array, dtype=np.uint8) & 1
        if a.ndim != 2:
            raise ValueError("expected a 2-d array")
        rows = tuple(from_indices(np.flatnonzero(row).tolist()) for row in a)
        return cls(a.shape[0], a.shape[1], rows)

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.nrows, self.ncols), dtype=np.uint8)
        for i, r in enumerate(self.rows):
            for j in bits(r):
                out[i, j] = 1
        return out

    def transpose(self) -> "Gf2Matrix":
        cols = [0] * self.ncols
        for i, r in enumerate(self.rows):
            for j in bits(r):
                cols[j] |= 1 << i
        return Gf2Matrix(self.ncols, self.nrows, tuple(cols))

    def mul_vec(self, x: int) -> int:
        """Matrix times column vector ``x`` (a bitset over columns)."""
        out = 0
        for i, r in enumerate(self.rows):
            if parity(r & x):
                out |= 1 << i
        return out

    def __matmul__(self, other: "Gf2Matrix") -> "Gf2Matrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        rows = []
        for r in self.rows:
            acc = 0
            for j in bits(r):
                acc ^= other.rows[j]
            rows.append(acc)
        return Gf2Matrix(self.nrows, other.ncols, tuple(rows))

    def is_zero(self) -> bool:
        return not any(self.rows)

    def echelon(self) -> list[tuple[int, int]]:
        return self.eliminate(self.rows, self.ncols)

    def rank(self) -> int:
        return len(self.echelon())

    def nullity(self) -> int:
        return self.ncols - self.rank()

    def nullspace(self) -> list[int]:
        """Basis of ``{x : A x = 0}``, one vector per free column."""
        ech = self.echelon()
        pivot_cols = {p for p, _ in ech}
        basis = []
        for f in range(self.ncols):
            if f in pivot_cols:
                continue
            x = 1 << f
            for p, row in ech:
                if (row >> f) & 1:
                    x |= 1 << p
            basis.append(x)
        if len(basis) + len(ech) != self.ncols:
            raise AssertionError("rank-nullity check failed")
        return basis

    def solve(self, b: int) -> int:
        """Some ``x`` with ``A x = b``; raises ValueError if none exists."""
        n = self.ncols
        aug = [r | (((b >> i) & 1) << n) for i, r in enumerate(self.rows)]
        x = 0
        for p, row in self.eliminate(aug, n + 1):
            if p == n:
                raise ValueError("inconsistent linear system")
            if (row >> n) & 1:
                x |= 1 << p
        return x

    def dump(self) -> str:
        """Text grid of 0/1, one row per line."""
        return "\n".join(
            "".join("1" if (r >> j) & 1 else "0" for j in range(self.ncols)) for r in self.rows
        )


class EchelonBasis:
    """Incrementally built echelon basis with optional coordinate tags.

    Each stored row carries a tag bitset recording which caller-supplied
    generators it is a combination of; reducing a vector accumulates the tags
    of the rows used, which is how coordinate maps are read off.
    """

    def __init__(self) -> None:
        self._rows: dict[int, tuple[int, int]] = {}

    def __len__(self) -> int:
        return len(self._rows)

    def reduce(self, v: int, tag: int = 0) -> tuple[int, int]:
        """Clear every pivot bit of ``v``; returns ``(residual, tag)``.

        Pivots are processed from the lowest bit up, so the residual is the
        lexicographically least element of ``v + span`` when bit 0 is read
        as the most significant coordinate.
        """
        residual = 0
        while v:
            low = v & -v
            p = low.bit_length() - 1
            hit = self._rows.get(p)
            if hit is not None:
                v ^= hit[0]
                tag ^= hit[1]
            else:
                residual |= low
                v ^= low
        return residual, tag

    def add(self, v: int, tag: int = 0) -> bool:
        """Insert ``v``; returns False if it was already in the span."""
        r, t = self.reduce(v, tag)
        if r == 0:
            return False
        p = (r & -r).bit_length() - 1
        self._rows[p] = (r, t)
        return True

    def contains(self, v: int) -> bool:
        return self.reduce(v)[0] == 0


def rank(rows: Sequence[int], ncols: int) -> int:
    return len(rref(rows, ncols))
