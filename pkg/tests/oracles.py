"""Brute-force oracles shared by the test modules.

These stay independent of the code paths they check: span membership by
exhaustive enumeration, Betti numbers by dense rank over GF(2), Hausdorff
distances by plain loops.
"""

import itertools

import numpy as np


def dense_gf2(matrix):
    """SparseColumnMatrix -> dense uint8 array."""
    out = np.zeros((matrix.rows, matrix.cols), dtype=np.uint8)
    for j, col in enumerate(matrix.columns):
        for r, c in col:
            out[r, j] = int(c) % 2
    return out


def gf2_rank_dense(a):
    """Row-echelon rank over GF(2) of a dense 0/1 array."""
    a = np.array(a, dtype=np.uint8) % 2
    rank = 0
    for col in range(a.shape[1]):
        pivots = np.flatnonzero(a[rank:, col]) + rank
        if len(pivots) == 0:
            continue
        a[[rank, pivots[0]]] = a[[pivots[0], rank]]
        hits = np.flatnonzero(a[:, col] == 1)
        for r in hits:
            if r != rank:
                a[r] ^= a[rank]
        rank += 1
        if rank == a.shape[0]:
            break
    return rank


def span_members_gf2(columns, rows):
    """All vectors in the GF(2) column span (columns as index lists)."""
    members = set()
    for picks in itertools.product([0, 1], repeat=len(columns)):
        v = np.zeros(rows, dtype=np.uint8)
        for take, col in zip(picks, columns):
            if take:
                v[list(col)] ^= 1
        members.add(tuple(int(x) for x in v))
    return members


def betti_by_dense_rank(cpx):
    """Betti numbers from dense GF(2) ranks of the boundary matrices."""
    ranks = [0]
    for degree in range(1, cpx.dim + 1):
        rows, cols, _ = cpx.boundary(degree)
        dense = np.zeros((cpx.n_cells(degree - 1), cpx.n_cells(degree)),
                         dtype=np.uint8)
        for r, c in zip(rows, cols):
            dense[r, c] ^= 1
        ranks.append(gf2_rank_dense(dense))
    ranks.append(0)
    return [cpx.n_cells(d) - ranks[d] - ranks[d + 1]
            for d in range(cpx.dim + 1)]


def hausdorff_slow(a, b, period=2 * np.pi):
    """Loop-based Hausdorff distance in the product metric."""
    def dist(i, j):
        dq = np.abs(a.q[i] - b.q[j])
        dq = np.minimum(dq, period - dq)
        return np.sqrt((dq ** 2).sum()
                       + ((a.p[i] - b.p[j]) ** 2).sum()
                       + (a.z[i] - b.z[j]) ** 2)

    d_ab = max(min(dist(i, j) for j in range(len(b))) for i in range(len(a)))
    d_ba = max(min(dist(i, j) for i in range(len(a))) for j in range(len(b)))
    return max(d_ab, d_ba)


def boundary_squared_is_zero(cpx):
    """Check the chain identity on a complex over Z, degree by degree."""
    for degree in range(2, cpx.dim + 1):
        hi_rows, hi_cols, hi_signs = cpx.boundary(degree)
        lo_rows, lo_cols, lo_signs = cpx.boundary(degree - 1)
        lo_by_col = {}
        for r, c, s in zip(lo_rows, lo_cols, lo_signs):
            lo_by_col.setdefault(int(c), []).append((int(r), int(s)))
        acc = {}
        for r, c, s in zip(hi_rows, hi_cols, hi_signs):
            for rr, ss in lo_by_col.get(int(r), []):
                key = (int(c), rr)
                acc[key] = acc.get(key, 0) + int(s) * ss
        if any(v != 0 for v in acc.values()):
            return False
    return True
