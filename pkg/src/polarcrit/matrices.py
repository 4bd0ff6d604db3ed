"""Polynomial matrices: Jacobians, block stacking, and exact minors.

Minors are computed by cofactor expansion with memoization over shared
(row-subset, column-subset) sub-determinants; matrices here are small, so
this is exact and fast enough without fraction-free elimination.
"""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from .ring import MultiPoly, Ring, RingMismatchError

__all__ = ["PolyMatrix", "jacobian", "minors", "stack", "row_of_constants"]


class PolyMatrix:
    """A rows x cols matrix of polynomials over one common ring."""

    __slots__ = ("rows", "cols", "entries", "ring")

    def __init__(self, rows: int, cols: int, entries: Sequence[MultiPoly]):
        if rows <= 0 or cols <= 0:
            raise ValueError("matrix dimensions must be positive")
        if rows * cols != len(entries):
            raise ValueError("entry count does not match dimensions")
        ring = entries[0].ring
        for e in entries:
            if e.ring != ring:
                raise RingMismatchError("matrix entries live in different rings")
        self.rows = rows
        self.cols = cols
        self.entries = list(entries)
        self.ring = ring

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[MultiPoly]]) -> "PolyMatrix":
        flat = [e for row in rows for e in row]
        return cls(len(rows), len(rows[0]), flat)

    def at(self, i: int, j: int) -> MultiPoly:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list[MultiPoly]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> list[MultiPoly]:
        return [self.at(i, j) for i in range(self.rows)]

    def evaluate(self, point):
        """Numeric matrix (list of lists of field elements) at a point."""
        return [[self.at(i, j).evaluate(point) for j in range(self.cols)] for i in range(self.rows)]

    def select_columns(self, cols: Sequence[int]) -> "PolyMatrix":
        rows = [[self.at(i, j) for j in cols] for i in range(self.rows)]
        return PolyMatrix.from_rows(rows)

    def right_multiply(self, const_cols: Sequence[Sequence]) -> "PolyMatrix":
        """Multiply by a constant matrix given as a list of columns."""
        out_rows = []
        for i in range(self.rows):
            row = self.row(i)
            out_row = []
            for col in const_cols:
                acc = self.ring.zero()
                for e, c in zip(row, col):
                    acc = acc + e.scalar_mul(c)
                out_row.append(acc)
            out_rows.append(out_row)
        return PolyMatrix.from_rows(out_rows)

    def left_multiply_const(self, const_rows: Sequence[Sequence]) -> "PolyMatrix":
        """Multiply on the left by a constant matrix given as a list of rows."""
        out_rows = []
        for crow in const_rows:
            out_row = []
            for j in range(self.cols):
                acc = self.ring.zero()
                for c, i in zip(crow, range(self.rows)):
                    acc = acc + self.at(i, j).scalar_mul(c)
                out_row.append(acc)
            out_rows.append(out_row)
        return PolyMatrix.from_rows(out_rows)

    def __repr__(self):
        return f"PolyMatrix({self.rows}x{self.cols})"


def jacobian(polys: Sequence[MultiPoly]) -> PolyMatrix:
    """The p x n matrix of partial derivatives of the given polynomials."""
    if not polys:
        raise ValueError("jacobian of an empty system")
    ring = polys[0].ring
    rows = []
    for f in polys:
        if f.ring != ring:
            raise RingMismatchError("jacobian entries live in different rings")
        rows.append([f.partial_derivative(i) for i in range(ring.nvars)])
    return PolyMatrix.from_rows(rows)


def _subdet(m: PolyMatrix, rows: tuple[int, ...], cols: tuple[int, ...], cache: dict) -> MultiPoly:
    key = (rows, cols)
    hit = cache.get(key)
    if hit is not None:
        return hit
    if len(rows) == 1:
        val = m.at(rows[0], cols[0])
    else:
        val = m.ring.zero()
        sub_rows = rows[1:]
        for t, c in enumerate(cols):
            entry = m.at(rows[0], c)
            if entry.is_zero():
                continue
            minor = _subdet(m, sub_rows, cols[:t] + cols[t + 1 :], cache)
            if minor.is_zero():
                continue
            piece = entry * minor
            val = val - piece if t % 2 else val + piece
    cache[key] = val
    return val


def minors(m: PolyMatrix, r: int, cache: dict | None = None) -> list[MultiPoly]:
    """All r x r minors, in lexicographic (row subset, column subset) order."""
    if not 1 <= r <= min(m.rows, m.cols):
        raise ValueError(f"minor size {r} out of range for {m.rows}x{m.cols}")
    if cache is None:
        cache = {}
    out = []
    for rows in combinations(range(m.rows), r):
        for cols in combinations(range(m.cols), r):
            out.append(_subdet(m, rows, cols, cache))
    return out


def determinant(m: PolyMatrix) -> MultiPoly:
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    return _subdet(m, tuple(range(m.rows)), tuple(range(m.cols)), {})


def stack(blocks: Sequence[PolyMatrix]) -> PolyMatrix:
    """Vertical stack; all blocks must share the ring and the column count."""
    if not blocks:
        raise ValueError("nothing to stack")
    cols = blocks[0].cols
    ring = blocks[0].ring
    rows: list[list[MultiPoly]] = []
    for b in blocks:
        if b.cols != cols:
            raise ValueError("column count mismatch in stack")
        if b.ring != ring:
            raise RingMismatchError("stacked blocks live in different rings")
        rows.extend(b.row(i) for i in range(b.rows))
    return PolyMatrix.from_rows(rows)


def row_of_constants(ring: Ring, values: Sequence) -> PolyMatrix:
    """A 1 x len(values) matrix of constants from field elements."""
    if not values:
        raise ValueError("empty constant row")
    return PolyMatrix.from_rows([[ring.constant(v) for v in values]])
