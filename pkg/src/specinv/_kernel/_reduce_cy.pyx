# cython: boundscheck=False, wraparound=False, language_level=3
"""Compiled GF(2) column reduction.

Same interface and results as `_reduce_py`; columns are C++ vectors of
sorted row indices and the inner loop is a sorted symmetric-difference
merge against the current pivot column.
"""

import numpy as np

cimport numpy as cnp
from libcpp.vector cimport vector

cnp.import_array()


cdef void _sym_diff(vector[int] &a, vector[int] &b, vector[int] &out) noexcept:
    cdef size_t i = 0, j = 0
    out.clear()
    while i < a.size() and j < b.size():
        if a[i] < b[j]:
            out.push_back(a[i]); i += 1
        elif b[j] < a[i]:
            out.push_back(b[j]); j += 1
        else:
            i += 1; j += 1
    while i < a.size():
        out.push_back(a[i]); i += 1
    while j < b.size():
        out.push_back(b[j]); j += 1


cdef _to_csc(vector[vector[int]] &cols):
    cdef Py_ssize_t ncols = cols.size()
    cdef cnp.ndarray[cnp.int64_t, ndim=1] indptr = np.zeros(ncols + 1, dtype=np.int64)
    cdef Py_ssize_t j, total = 0
    for j in range(ncols):
        total += cols[j].size()
        indptr[j + 1] = total
    cdef cnp.ndarray[cnp.int32_t, ndim=1] indices = np.empty(total, dtype=np.int32)
    cdef Py_ssize_t pos = 0
    cdef size_t t
    for j in range(ncols):
        for t in range(cols[j].size()):
            indices[pos] = cols[j][t]
            pos += 1
    return indptr, indices


def reduce_columns(indptr, indices, nrows, want_transform=False):
    """Left-to-right column reduction of a CSC matrix over GF(2).

    Returns (r_indptr, r_indices, pivot_of_row) plus (v_indptr, v_indices)
    when want_transform is set; V satisfies R = M * V as column operations.
    """
    cdef cnp.ndarray[cnp.int64_t, ndim=1] iptr = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] idx = np.ascontiguousarray(indices, dtype=np.int32)
    cdef Py_ssize_t ncols = iptr.shape[0] - 1
    cdef Py_ssize_t n_rows = nrows
    cdef bint transform = bool(want_transform)

    cdef vector[vector[int]] cols = vector[vector[int]](ncols)
    cdef vector[vector[int]] vcols
    if transform:
        vcols = vector[vector[int]](ncols)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] pivot = np.full(n_rows, -1, dtype=np.int64)

    cdef vector[int] cur, vcur, scratch
    cdef Py_ssize_t j, k
    cdef int low
    cdef cnp.int64_t p
    for j in range(ncols):
        cur.clear()
        for k in range(iptr[j], iptr[j + 1]):
            cur.push_back(idx[k])
        if transform:
            vcur.clear()
            vcur.push_back(<int>j)
        while cur.size() > 0:
            low = cur[cur.size() - 1]
            p = pivot[low]
            if p < 0:
                break
            _sym_diff(cur, cols[p], scratch)
            cur.swap(scratch)
            if transform:
                _sym_diff(vcur, vcols[p], scratch)
                vcur.swap(scratch)
        cols[j] = cur
        if transform:
            vcols[j] = vcur
        if cur.size() > 0:
            pivot[cur[cur.size() - 1]] = j

    r_indptr, r_indices = _to_csc(cols)
    if transform:
        v_indptr, v_indices = _to_csc(vcols)
        return r_indptr, r_indices, pivot, v_indptr, v_indices
    return r_indptr, r_indices, pivot


def eliminate(r_indptr, r_indices, pivot_of_row, chain, record=None):
    """XOR pivot columns into `chain` while its largest row is a pivot.

    Returns the residual chain as a sorted int32 array; empty iff the
    chain lies in the column span.
    """
    cdef cnp.ndarray[cnp.int64_t, ndim=1] iptr = np.ascontiguousarray(r_indptr, dtype=np.int64)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] idx = np.ascontiguousarray(r_indices, dtype=np.int32)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] pivot = np.ascontiguousarray(pivot_of_row, dtype=np.int64)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] ch = np.ascontiguousarray(
        np.sort(np.asarray(chain, dtype=np.int32)))
    cdef Py_ssize_t n_rows = pivot.shape[0]

    cdef vector[int] cur, col, scratch
    cdef Py_ssize_t k
    for k in range(ch.shape[0]):
        cur.push_back(ch[k])
    cdef int low
    cdef cnp.int64_t p
    while cur.size() > 0:
        low = cur[cur.size() - 1]
        if low >= n_rows:
            raise ValueError("chain has entries outside the row range")
        p = pivot[low]
        if p < 0:
            break
        col.clear()
        for k in range(iptr[p], iptr[p + 1]):
            col.push_back(idx[k])
        _sym_diff(cur, col, scratch)
        cur.swap(scratch)
        if record is not None:
            record.append(int(p))
    cdef cnp.ndarray[cnp.int32_t, ndim=1] out = np.empty(cur.size(), dtype=np.int32)
    for k in range(<Py_ssize_t>cur.size()):
        out[k] = cur[k]
    return out
