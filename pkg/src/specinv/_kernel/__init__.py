"""GF(2) reduction kernel with compiled / pure-Python backends.

The compiled Cython backend is used when available; set SPECINV_KERNEL to
"python" or "compiled" to force a backend (forcing "compiled" raises if
the extension is missing).
"""

from __future__ import annotations

import os

import numpy as np

_requested = os.environ.get("SPECINV_KERNEL", "auto").strip().lower()

if _requested in ("auto", ""):
    try:
        from . import _reduce_cy as _impl

        KERNEL = "compiled"
    except ImportError:
        from . import _reduce_py as _impl

        KERNEL = "python"
elif _requested in ("compiled", "cy", "c"):
    from . import _reduce_cy as _impl

    KERNEL = "compiled"
elif _requested in ("python", "py", "pure"):
    from . import _reduce_py as _impl

    KERNEL = "python"
else:
    raise ValueError(f"unknown SPECINV_KERNEL value: {_requested!r}")

reduce_columns = _impl.reduce_columns
eliminate = _impl.eliminate


class ReducedBasis:
    """Column-echelon form of a GF(2) column span, queryable afterwards.

    Rows are expected in a meaningful order (for sublevel sweeps: sorted by
    filtration value); reduction never permutes rows, so the largest row
    index of a residual chain is the sweep answer.
    """

    def __init__(self, indptr, indices, nrows, want_transform=False):
        indptr = np.ascontiguousarray(indptr, dtype=np.int64)
        indices = np.ascontiguousarray(indices, dtype=np.int32)
        self.nrows = int(nrows)
        self.ncols = len(indptr) - 1
        if want_transform:
            (self.indptr, self.indices, self.pivot_of_row,
             self.v_indptr, self.v_indices) = reduce_columns(
                indptr, indices, self.nrows, True)
        else:
            self.indptr, self.indices, self.pivot_of_row = reduce_columns(
                indptr, indices, self.nrows, False)
            self.v_indptr = self.v_indices = None

    @property
    def rank(self):
        return int(np.count_nonzero(self.pivot_of_row >= 0))

    def column(self, j):
        return self.indices[self.indptr[j]:self.indptr[j + 1]]

    def transform_column(self, j):
        if self.v_indptr is None:
            raise ValueError("reduction was run without the transform record")
        return self.v_indices[self.v_indptr[j]:self.v_indptr[j + 1]]

    def eliminate(self, chain, record=None):
        """Residual of `chain` after cancelling pivot rows; [] iff in span."""
        chain = np.ascontiguousarray(chain, dtype=np.int32)
        return eliminate(self.indptr, self.indices, self.pivot_of_row,
                         chain, record)

    def in_span(self, chain):
        return len(self.eliminate(chain)) == 0
