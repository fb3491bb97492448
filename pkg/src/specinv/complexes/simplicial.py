"""Simplicial complexes with ordered vertices and cup products.

Simplices are stored as strictly increasing vertex tuples; the global
vertex order is what makes the Alexander-Whitney cup product on cochains
well defined (front face times back face).
"""

from __future__ import annotations

import numpy as np


class SimplicialComplex:
    kind = "simplicial"

    def __init__(self, n_vertices, simplices):
        """Build the face closure of the given simplices.

        Every simplex must be a strictly increasing tuple of vertex ids in
        range(n_vertices).
        """
        self.n_vertices = int(n_vertices)
        by_degree = {}
        stack = []
        for s in simplices:
            t = tuple(int(v) for v in s)
            if any(t[i] >= t[i + 1] for i in range(len(t) - 1)):
                raise ValueError(f"simplex {t} is not strictly increasing")
            if t and (t[0] < 0 or t[-1] >= self.n_vertices):
                raise ValueError(f"simplex {t} has vertices out of range")
            stack.append(t)
        seen = set()
        while stack:
            t = stack.pop()
            if t in seen or not t:
                continue
            seen.add(t)
            by_degree.setdefault(len(t) - 1, set()).add(t)
            if len(t) > 1:
                for i in range(len(t)):
                    stack.append(t[:i] + t[i + 1:])
        for v in range(self.n_vertices):
            by_degree.setdefault(0, set()).add((v,))
        self.dim = max(by_degree) if by_degree else 0
        self.simplices = [sorted(by_degree.get(d, ())) for d in range(self.dim + 1)]
        self._index = [
            {s: i for i, s in enumerate(level)} for level in self.simplices
        ]
        self._boundary_cache = {}
        self.canonical_basis = None
        self.model = None
        self._check_boundary_identity()

    def _check_boundary_identity(self):
        """Signed faces of faces must cancel on every simplex."""
        for level in self.simplices[2:]:
            for s in level:
                acc = {}
                for i in range(len(s)):
                    face = s[:i] + s[i + 1:]
                    si = 1 if i % 2 == 0 else -1
                    for j in range(len(face)):
                        sub = face[:j] + face[j + 1:]
                        sj = 1 if j % 2 == 0 else -1
                        acc[sub] = acc.get(sub, 0) + si * sj
                if any(v != 0 for v in acc.values()):
                    raise ValueError(
                        f"boundary of boundary nonzero on simplex {s}")

    def n_cells(self, degree):
        if degree < 0 or degree > self.dim:
            return 0
        return len(self.simplices[degree])

    @property
    def total_cells(self):
        return sum(len(level) for level in self.simplices)

    def simplex_index(self, simplex):
        t = tuple(simplex)
        return self._index[len(t) - 1][t]

    def boundary(self, degree):
        """(rows, cols, signs) of the boundary map degree -> degree-1."""
        if degree in self._boundary_cache:
            return self._boundary_cache[degree]
        rows, cols, signs = [], [], []
        if 1 <= degree <= self.dim:
            lower = self._index[degree - 1]
            for j, s in enumerate(self.simplices[degree]):
                for i in range(len(s)):
                    face = s[:i] + s[i + 1:]
                    rows.append(lower[face])
                    cols.append(j)
                    signs.append(1 if i % 2 == 0 else -1)
        out = (np.asarray(rows, dtype=np.int64),
               np.asarray(cols, dtype=np.int64),
               np.asarray(signs, dtype=np.int8))
        self._boundary_cache[degree] = out
        return out

    def lower_star_values(self, vertex_values):
        values = np.asarray(vertex_values, dtype=float)
        if len(values) != self.n_vertices:
            raise ValueError("one value per vertex required")
        return [
            np.asarray([values[list(s)].max() for s in level], dtype=float)
            for level in self.simplices
        ]

    def cell_vertices(self, degree):
        level = self.simplices[degree]
        if not level:
            return np.zeros((0, degree + 1), dtype=np.int64)
        return np.asarray(level, dtype=np.int64)

    # -- cup products over GF(2) --------------------------------------------

    def cup_cochain(self, u, p, v, q):
        """Alexander-Whitney product of GF(2) cochains.

        u and v are 0/1 arrays over the p- and q-simplices; the result is a
        0/1 array over the (p+q)-simplices: front p-face times back q-face.
        """
        out = np.zeros(self.n_cells(p + q), dtype=np.uint8)
        if p + q > self.dim:
            return out
        u = np.asarray(u, dtype=np.uint8)
        v = np.asarray(v, dtype=np.uint8)
        idx_p, idx_q = self._index[p], self._index[q]
        for j, s in enumerate(self.simplices[p + q]):
            front = idx_p[s[:p + 1]]
            back = idx_q[s[p:]]
            out[j] = u[front] & v[back]
        return out
