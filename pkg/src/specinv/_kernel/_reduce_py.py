"""Pure-Python GF(2) column reduction.

Fallback for the compiled kernel in `_reduce_cy`.  Columns are held as
Python integers used as bitmasks (bit r set <=> entry in row r), so the
inner XOR runs in C inside the int implementation.  Interface and results
are identical to the compiled version.
"""

from __future__ import annotations

import numpy as np


def _to_bits(indptr, indices):
    cols = []
    for j in range(len(indptr) - 1):
        x = 0
        for r in indices[indptr[j]:indptr[j + 1]]:
            x |= 1 << int(r)
        cols.append(x)
    return cols


def _bits_to_csc(cols):
    indptr = np.zeros(len(cols) + 1, dtype=np.int64)
    chunks = []
    for j, x in enumerate(cols):
        rows = []
        while x:
            lsb = x & -x
            rows.append(lsb.bit_length() - 1)
            x ^= lsb
        chunks.append(np.asarray(rows, dtype=np.int32))
        indptr[j + 1] = indptr[j] + len(rows)
    if chunks:
        indices = np.concatenate(chunks)
    else:
        indices = np.zeros(0, dtype=np.int32)
    return indptr, indices.astype(np.int32)


def reduce_columns(indptr, indices, nrows, want_transform=False):
    """Left-to-right column reduction of a CSC matrix over GF(2).

    Returns (r_indptr, r_indices, pivot_of_row) plus (v_indptr, v_indices)
    when want_transform is set; V satisfies R = M * V as column operations.
    After reduction every nonzero column has a distinct largest row index
    (its pivot), and pivot_of_row maps that row to the column owning it
    (-1 when unowned).
    """
    ncols = len(indptr) - 1
    cols = _to_bits(indptr, indices)
    vcols = [1 << j for j in range(ncols)] if want_transform else None
    pivot_of_row = np.full(nrows, -1, dtype=np.int64)

    for j in range(ncols):
        cur = cols[j]
        vcur = vcols[j] if want_transform else 0
        while cur:
            low = cur.bit_length() - 1
            k = pivot_of_row[low]
            if k < 0:
                break
            cur ^= cols[k]
            if want_transform:
                vcur ^= vcols[k]
        cols[j] = cur
        if want_transform:
            vcols[j] = vcur
        if cur:
            pivot_of_row[cur.bit_length() - 1] = j

    r_indptr, r_indices = _bits_to_csc(cols)
    if want_transform:
        v_indptr, v_indices = _bits_to_csc(vcols)
        return r_indptr, r_indices, pivot_of_row, v_indptr, v_indices
    return r_indptr, r_indices, pivot_of_row


def eliminate(r_indptr, r_indices, pivot_of_row, chain, record=None):
    """XOR pivot columns into `chain` while its largest row is a pivot.

    Returns the residual chain as a sorted int32 array.  Empty residual
    means `chain` lies in the column span.  If `record` is a list, the
    indices of the columns used are appended to it.
    """
    cur = 0
    for r in np.asarray(chain, dtype=np.int64):
        cur ^= 1 << int(r)
    nrows = len(pivot_of_row)
    while cur:
        low = cur.bit_length() - 1
        if low >= nrows:
            raise ValueError("chain has entries outside the row range")
        k = pivot_of_row[low]
        if k < 0:
            break
        col = 0
        for r in r_indices[r_indptr[k]:r_indptr[k + 1]]:
            col |= 1 << int(r)
        cur ^= col
        if record is not None:
            record.append(int(k))
    rows = []
    while cur:
        lsb = cur & -cur
        rows.append(lsb.bit_length() - 1)
        cur ^= lsb
    return np.asarray(rows, dtype=np.int32)
