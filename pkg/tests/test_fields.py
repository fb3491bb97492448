"""Exact linear algebra: reduction, membership, rank, kernels."""

import itertools

import numpy as np
import pytest

from specinv import fields
from specinv.fields import GF2, QQ, SparseColumnMatrix

from oracles import dense_gf2, gf2_rank_dense, span_members_gf2

HOLLOW_TRIANGLE = [  # boundary of the three edges of a triangle
    [1, 1, 0],
    [1, 0, 1],
    [0, 1, 1],
]


def test_reduce_zero_matrix():
    m = SparseColumnMatrix.zeros(4, 3)
    red = fields.reduce(m)
    assert red.rank == 0
    assert all(col == () for col in red.reduced.columns)


def test_reduce_identity():
    m = SparseColumnMatrix.identity(3)
    red = fields.reduce(m)
    assert red.rank == 3
    assert red.reduced == m


def test_hollow_triangle_rank_and_kernel():
    m = SparseColumnMatrix.from_dense(HOLLOW_TRIANGLE)
    assert fields.rank(m) == 2
    kernel = fields.kernel_basis(m)
    assert kernel == [[1, 1, 1]]


def test_reduce_idempotent():
    rng = np.random.default_rng(11)
    for _ in range(20):
        dense = rng.integers(0, 2, size=(6, 5))
        m = SparseColumnMatrix.from_dense(dense)
        red = fields.reduce(m).reduced
        again = fields.reduce(red).reduced
        assert again == red


def test_reduce_lows_injective_and_transform():
    rng = np.random.default_rng(5)
    for _ in range(30):
        dense = rng.integers(0, 2, size=(7, 6))
        m = SparseColumnMatrix.from_dense(dense)
        red = fields.reduce(m)
        lows = [col[-1][0] for col in red.reduced.columns if col]
        assert len(lows) == len(set(lows))
        # R = M * V column by column
        for j in range(m.cols):
            acc = np.zeros(m.rows, dtype=np.uint8)
            for r, _ in red.transform.columns[j]:
                for rr, _ in m.columns[r]:
                    acc[rr] ^= 1
            expect = np.zeros(m.rows, dtype=np.uint8)
            for rr, _ in red.reduced.columns[j]:
                expect[rr] = 1
            assert (acc == expect).all()


def test_in_image_trivial_cases():
    m = SparseColumnMatrix.identity(3)
    ok, coeffs = fields.in_image(m, [1, 0, 0])
    assert ok and coeffs == [1, 0, 0]
    ok, coeffs = fields.in_image(m, [0, 0, 0])
    assert ok and coeffs == [0, 0, 0]


def test_in_image_single_column_false():
    m = SparseColumnMatrix.from_dense([[1], [1], [0]])
    ok, coeffs = fields.in_image(m, [1, 0, 0])
    assert not ok and coeffs is None


def test_in_image_matches_brute_force_enumeration():
    rng = np.random.default_rng(23)
    for trial in range(25):
        rows = int(rng.integers(2, 7))
        cols = int(rng.integers(1, 6))
        dense = rng.integers(0, 2, size=(rows, cols))
        m = SparseColumnMatrix.from_dense(dense)
        members = span_members_gf2(
            [[r for r, _ in col] for col in m.columns], rows)
        for v in itertools.product([0, 1], repeat=rows):
            ok, coeffs = fields.in_image(m, list(v))
            assert ok == (v in members)
            if ok:
                assert tuple(fields.matrix_vector(m, coeffs)) == v


def test_rank_plus_kernel_dimension():
    rng = np.random.default_rng(37)
    for _ in range(25):
        dense = rng.integers(0, 2, size=(6, 8))
        m = SparseColumnMatrix.from_dense(dense)
        assert fields.rank(m) + len(fields.kernel_basis(m)) == m.cols
        assert fields.rank(m) == gf2_rank_dense(dense)


def test_rational_field_reduction_and_membership():
    dense = [[1, 2, 3], [0, 1, 1], [1, 0, 2]]
    m = SparseColumnMatrix.from_dense(dense, QQ)
    assert fields.rank(m) == 3
    ok, coeffs = fields.in_image(m, [1, 1, 1])
    assert ok
    assert fields.matrix_vector(m, coeffs) == [QQ.coerce(1)] * 3
    singular = SparseColumnMatrix.from_dense([[1, 2], [2, 4]], QQ)
    assert fields.rank(singular) == 1
    assert len(fields.kernel_basis(singular)) == 1


def test_rational_kernel_exactness():
    m = SparseColumnMatrix.from_dense([[2, 1, 3], [4, 2, 6]], QQ)
    for vec in fields.kernel_basis(m):
        assert fields.matrix_vector(m, vec) == [QQ.zero, QQ.zero]


def test_dimension_mismatch_rejected():
    m = SparseColumnMatrix.identity(3)
    with pytest.raises(ValueError):
        fields.in_image(m, [1, 0])


def test_column_entries_must_increase():
    with pytest.raises(ValueError):
        SparseColumnMatrix(3, 1, [[(1, 1), (1, 1)]])


def test_gf2_and_dense_agree():
    rng = np.random.default_rng(41)
    dense = rng.integers(0, 2, size=(9, 9))
    m = SparseColumnMatrix.from_dense(dense)
    assert (dense_gf2(m) == dense % 2).all()
