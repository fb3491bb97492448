"""The compiled and pure-Python reduction backends must agree exactly."""

import numpy as np
import pytest

from specinv._kernel import _reduce_py

try:
    from specinv._kernel import _reduce_cy
except ImportError:
    _reduce_cy = None

needs_compiled = pytest.mark.skipif(
    _reduce_cy is None, reason="compiled kernel not built")


def _random_csc(rng, nrows, ncols, density=0.3):
    cols = []
    for _ in range(ncols):
        rows = np.flatnonzero(rng.random(nrows) < density)
        cols.append(rows.astype(np.int32))
    indptr = np.zeros(ncols + 1, dtype=np.int64)
    for j, c in enumerate(cols):
        indptr[j + 1] = indptr[j] + len(c)
    indices = (np.concatenate(cols) if cols else np.zeros(0)).astype(np.int32)
    return indptr, indices


@needs_compiled
def test_backends_agree_on_random_matrices():
    rng = np.random.default_rng(99)
    for trial in range(20):
        nrows = int(rng.integers(1, 40))
        ncols = int(rng.integers(1, 40))
        indptr, indices = _random_csc(rng, nrows, ncols)
        out_py = _reduce_py.reduce_columns(indptr, indices, nrows, True)
        out_cy = _reduce_cy.reduce_columns(indptr, indices, nrows, True)
        for a, b in zip(out_py, out_cy):
            assert np.array_equal(np.asarray(a), np.asarray(b))


@needs_compiled
def test_backends_agree_on_eliminate():
    rng = np.random.default_rng(17)
    for trial in range(20):
        nrows, ncols = 30, 25
        indptr, indices = _random_csc(rng, nrows, ncols)
        red_py = _reduce_py.reduce_columns(indptr, indices, nrows)
        red_cy = _reduce_cy.reduce_columns(indptr, indices, nrows)
        chain = np.flatnonzero(rng.random(nrows) < 0.3).astype(np.int32)
        res_py = _reduce_py.eliminate(red_py[0], red_py[1], red_py[2], chain)
        res_cy = _reduce_cy.eliminate(red_cy[0], red_cy[1], red_cy[2], chain)
        assert np.array_equal(np.asarray(res_py), np.asarray(res_cy))


def test_python_backend_reduction_is_echelon():
    rng = np.random.default_rng(3)
    indptr, indices = _random_csc(rng, 20, 25)
    r_indptr, r_indices, pivot = _reduce_py.reduce_columns(indptr, indices, 20)
    lows = []
    for j in range(25):
        col = r_indices[r_indptr[j]:r_indptr[j + 1]]
        if len(col):
            lows.append(int(col[-1]))
    assert len(lows) == len(set(lows))
    for low in lows:
        assert pivot[low] >= 0
