"""Exact sparse linear algebra over GF(2) and the rationals.

Matrices are stored column-wise as sorted (row, coefficient) pairs with no
explicit zeros.  The one reduction implemented is persistence-style column
reduction (left to right, cancelling largest row indices), which is what
the sublevel sweeps need; rank, kernel and membership queries are all
derived from it.  GF(2) is the default field and is backed by the
reduction kernel; rationals use `fractions.Fraction` throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from ._kernel import ReducedBasis


class _GF2:
    """Field with two elements; addition is XOR, multiplication is AND."""

    name = "F2"
    zero = 0
    one = 1

    @staticmethod
    def coerce(x):
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"{x} is not a GF(2) element")
            x = x.numerator
        return int(x) & 1

    @staticmethod
    def add(a, b):
        return a ^ b

    @staticmethod
    def mul(a, b):
        return a & b

    @staticmethod
    def neg(a):
        return a

    @staticmethod
    def inv(a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(2)")
        return 1


class _QQ:
    """Arbitrary-precision rationals."""

    name = "Q"
    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def coerce(x):
        return Fraction(x)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def inv(a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in Q")
        return 1 / Fraction(a)


GF2 = _GF2()
QQ = _QQ()

FIELDS = {"f2": GF2, "q": QQ}


def get_field(name):
    try:
        return FIELDS[name.lower()]
    except KeyError:
        raise ValueError(f"unknown field {name!r}; expected 'f2' or 'q'") from None


def _vec_add_scaled(field, a, b, factor):
    """a + factor*b for sorted sparse vectors of (row, coeff) pairs."""
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        ra, rb = a[i][0], b[j][0]
        if ra < rb:
            out.append(a[i])
            i += 1
        elif rb < ra:
            c = field.mul(factor, b[j][1])
            if c != field.zero:
                out.append((rb, c))
            j += 1
        else:
            c = field.add(a[i][1], field.mul(factor, b[j][1]))
            if c != field.zero:
                out.append((ra, c))
            i += 1
            j += 1
    out.extend(a[i:])
    for rb, cb in b[j:]:
        c = field.mul(factor, cb)
        if c != field.zero:
            out.append((rb, c))
    return out


class SparseColumnMatrix:
    """Immutable sparse matrix over GF(2) or Q, stored by columns.

    Within each column the row indices are strictly increasing and no zero
    coefficients are stored.
    """

    def __init__(self, rows, cols, columns, field=GF2):
        self.rows = int(rows)
        self.cols = int(cols)
        self.field = field
        norm = []
        if len(columns) != self.cols:
            raise ValueError("column count does not match cols")
        for col in columns:
            entries = []
            last = -1
            for r, c in col:
                r = int(r)
                c = field.coerce(c)
                if not 0 <= r < self.rows:
                    raise ValueError(f"row index {r} out of range")
                if r <= last:
                    raise ValueError("rows within a column must strictly increase")
                last = r
                if c != field.zero:
                    entries.append((r, c))
            norm.append(tuple(entries))
        self.columns = tuple(norm)

    @classmethod
    def from_dense(cls, array, field=GF2):
        array = [list(row) for row in array]
        rows = len(array)
        cols = len(array[0]) if rows else 0
        columns = [[(i, array[i][j]) for i in range(rows) if field.coerce(array[i][j]) != field.zero]
                   for j in range(cols)]
        return cls(rows, cols, columns, field)

    @classmethod
    def identity(cls, n, field=GF2):
        return cls(n, n, [[(j, field.one)] for j in range(n)], field)

    @classmethod
    def zeros(cls, rows, cols, field=GF2):
        return cls(rows, cols, [[] for _ in range(cols)], field)

    def column_vector(self, j):
        return self.columns[j]

    def to_dense(self):
        out = [[self.field.zero] * self.cols for _ in range(self.rows)]
        for j, col in enumerate(self.columns):
            for r, c in col:
                out[r][j] = c
        return out

    def low(self, j):
        col = self.columns[j]
        return col[-1][0] if col else None

    def __eq__(self, other):
        return (isinstance(other, SparseColumnMatrix)
                and self.rows == other.rows and self.cols == other.cols
                and self.field is other.field and self.columns == other.columns)

    def __repr__(self):
        return f"SparseColumnMatrix({self.rows}x{self.cols} over {self.field.name})"


@dataclass(frozen=True)
class Reduction:
    """Column-echelon form plus the column-operation record (R = M·V)."""

    reduced: SparseColumnMatrix
    transform: SparseColumnMatrix

    @property
    def rank(self):
        return sum(1 for col in self.reduced.columns if col)

    def pivot_rows(self):
        return sorted(col[-1][0] for col in self.reduced.columns if col)


def _to_csc(m):
    indptr = np.zeros(m.cols + 1, dtype=np.int64)
    rows = []
    for j, col in enumerate(m.columns):
        rows.extend(r for r, _ in col)
        indptr[j + 1] = len(rows)
    return indptr, np.asarray(rows, dtype=np.int32)


def reduce(m: SparseColumnMatrix) -> Reduction:
    """Persistence-style column reduction.

    The result is in column-echelon form: the largest row index of each
    nonzero column is distinct.  Idempotent on its own output.
    """
    field = m.field
    if field is GF2:
        indptr, indices = _to_csc(m)
        basis = ReducedBasis(indptr, indices, m.rows, want_transform=True)
        r_cols = [[(int(r), 1) for r in basis.column(j)] for j in range(m.cols)]
        v_cols = [[(int(r), 1) for r in basis.transform_column(j)] for j in range(m.cols)]
        reduced = SparseColumnMatrix(m.rows, m.cols, r_cols, field)
        transform = SparseColumnMatrix(m.cols, m.cols, v_cols, field)
        return Reduction(reduced, transform)

    cols = [list(col) for col in m.columns]
    vcols = [[(j, field.one)] for j in range(m.cols)]
    pivot_of_row = {}
    for j in range(m.cols):
        cur, vcur = cols[j], vcols[j]
        while cur:
            low, c = cur[-1]
            k = pivot_of_row.get(low)
            if k is None:
                break
            factor = field.neg(field.mul(c, field.inv(cols[k][-1][1])))
            cur = _vec_add_scaled(field, cur, cols[k], factor)
            vcur = _vec_add_scaled(field, vcur, vcols[k], factor)
        cols[j], vcols[j] = cur, vcur
        if cur:
            pivot_of_row[cur[-1][0]] = j
    reduced = SparseColumnMatrix(m.rows, m.cols, cols, field)
    transform = SparseColumnMatrix(m.cols, m.cols, vcols, field)
    return Reduction(reduced, transform)


def _coerce_vector(m, v):
    field = m.field
    if len(v) != m.rows:
        raise ValueError(f"vector length {len(v)} != rows {m.rows}")
    return [(i, field.coerce(x)) for i, x in enumerate(v)
            if field.coerce(x) != field.zero]


def in_image(m: SparseColumnMatrix, v: Sequence, reduction: Reduction | None = None):
    """Decide whether v lies in the column span of m.

    Returns (True, coeffs) with m·coeffs = v (coeffs dense over the
    original columns), or (False, None).
    """
    field = m.field
    cur = _coerce_vector(m, v)
    if reduction is None:
        reduction = reduce(m)
    red, vmat = reduction.reduced, reduction.transform
    pivot_of_row = {col[-1][0]: j for j, col in enumerate(red.columns) if col}
    used = []
    while cur:
        low, c = cur[-1]
        k = pivot_of_row.get(low)
        if k is None:
            return False, None
        factor = field.neg(field.mul(c, field.inv(red.columns[k][-1][1])))
        cur = _vec_add_scaled(field, cur, red.columns[k], factor)
        used.append((k, factor))
    coeffs = [field.zero] * m.cols
    for k, factor in used:
        for r, c in vmat.columns[k]:
            coeffs[r] = field.add(coeffs[r], field.neg(field.mul(factor, c)))
    return True, coeffs


def rank(m: SparseColumnMatrix) -> int:
    return reduce(m).rank


def kernel_basis(m: SparseColumnMatrix):
    """Basis of the right kernel, as dense coefficient vectors."""
    red = reduce(m)
    out = []
    for j, col in enumerate(red.reduced.columns):
        if not col:
            vec = [m.field.zero] * m.cols
            for r, c in red.transform.columns[j]:
                vec[r] = c
            out.append(vec)
    return out


def matrix_vector(m: SparseColumnMatrix, coeffs: Sequence):
    """Dense product m·coeffs."""
    field = m.field
    out = [field.zero] * m.rows
    for j, col in enumerate(m.columns):
        c = field.coerce(coeffs[j])
        if c == field.zero:
            continue
        for r, val in col:
            out[r] = field.add(out[r], field.mul(c, val))
    return out
