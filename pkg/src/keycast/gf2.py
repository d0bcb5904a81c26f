"""Linear algebra over GF(2) with rows packed into Python integers.

Bit ``i`` of a row is the coefficient of basis symbol ``i``. Rows of any
width are plain ``int`` values; :class:`Gf2Matrix` adds the column count so
dimension errors can be caught.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Gf2Matrix:
    ncols: int
    rows: tuple = ()

    def __init__(self, ncols: int, rows: Iterable[int] = ()):
        rows = tuple(int(r) for r in rows)
        for r in rows:
            if r < 0 or r >> ncols:
                raise DimensionMismatch(f"row {r:#x} wider than {ncols} columns")
        object.__setattr__(self, "ncols", ncols)
        object.__setattr__(self, "rows", rows)

    def __len__(self):
        return len(self.rows)

    @classmethod
    def from_array(cls, array) -> "Gf2Matrix":
        arr = np.asarray(array, dtype=np.uint8) % 2
        if arr.ndim == 1:
            arr = arr.reshape(1, -1) if arr.size else arr.reshape(0, 0)
        return cls(arr.shape[1], (pack(row) for row in arr))

    def to_array(self) -> np.ndarray:
        out = np.zeros((len(self.rows), self.ncols), dtype=np.uint8)
        for i, r in enumerate(self.rows):
            out[i] = unpack(r, self.ncols)
        return out

    def stack(self, other: "Gf2Matrix") -> "Gf2Matrix":
        _same_width(self, other)
        return Gf2Matrix(self.ncols, self.rows + other.rows)


def pack(bits: Sequence[int]) -> int:
    v = 0
    for i, b in enumerate(bits):
        if int(b) & 1:
            v |= 1 << i
    return v


def unpack(v: int, n: int) -> np.ndarray:
    return np.array([(v >> i) & 1 for i in range(n)], dtype=np.uint8)


def unit(i: int) -> int:
    return 1 << i


def _rows(m) -> tuple:
    return m.rows if isinstance(m, Gf2Matrix) else tuple(m)


def _same_width(a, b):
    if isinstance(a, Gf2Matrix) and isinstance(b, Gf2Matrix) and a.ncols != b.ncols:
        raise DimensionMismatch(f"{a.ncols} columns vs {b.ncols} columns")


def echelon(rows: Iterable[int]) -> dict:
    """Reduce rows to a basis keyed by leading (highest) bit."""
    basis: dict[int, int] = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top not in basis:
                basis[top] = r
                break
            r ^= basis[top]
    return basis


def reduce(v: int, basis: dict) -> int:
    while v:
        top = v.bit_length() - 1
        if top not in basis:
            return v
        v ^= basis[top]
    return 0


def rank(m) -> int:
    return len(echelon(_rows(m)))


def in_span(v: int, m) -> bool:
    if isinstance(m, Gf2Matrix) and (v < 0 or v >> m.ncols):
        raise DimensionMismatch(f"vector {v:#x} wider than {m.ncols} columns")
    return reduce(v, echelon(_rows(m))) == 0


def spans_independent(a, c) -> bool:
    """True when the row spans of ``a`` and ``c`` meet only in zero."""
    _same_width(a, c)
    ra, rc = _rows(a), _rows(c)
    return rank(ra + rc) == rank(ra) + rank(rc)


def solve(v: int, rows: Sequence[int]) -> list[int] | None:
    """Indices of rows summing to ``v``, or None when ``v`` is outside the span."""
    basis: dict[int, tuple[int, int]] = {}
    for i, r in enumerate(rows):
        combo = 1 << i
        while r:
            top = r.bit_length() - 1
            if top not in basis:
                basis[top] = (r, combo)
                break
            br, bc = basis[top]
            r ^= br
            combo ^= bc
    combo = 0
    while v:
        top = v.bit_length() - 1
        if top not in basis:
            return None
        br, bc = basis[top]
        v ^= br
        combo ^= bc
    return [i for i in range(len(rows)) if combo >> i & 1]


def canonical(rows: Iterable[int]) -> tuple:
    """Reduced row echelon form as a sorted tuple; equal spans give equal tuples."""
    basis = echelon(rows)
    tops = sorted(basis)
    for t in tops:
        for other in tops:
            if other != t and basis[other] >> t & 1:
                basis[other] ^= basis[t]
    return tuple(basis[t] for t in tops)


def span_elements(rows: Sequence[int]) -> list[int]:
    basis = list(echelon(rows).values())
    elems = [0]
    for b in basis:
        elems += [e ^ b for e in elems]
    return elems


def parity(x: np.ndarray, row: int) -> np.ndarray:
    """Evaluate the functional ``row`` on every packed assignment in ``x``."""
    return np.bitwise_count(x & np.uint64(row)) & np.uint64(1)
