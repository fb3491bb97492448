"""Cubical grid complexes with periodic or bounded axes.

A grid with every axis periodic models a torus T^d; a grid with every axis
bounded models a box (used as the fiber of a generating family); mixed
grids arise as products of the two.  Cells are products of per-axis nodes
and edges, encoded as (mask, mixed-radix index) where the mask's set bits
mark the edge axes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Axis:
    nodes: int
    periodic: bool
    coords: tuple[float, ...]
    period: float | None = None

    def __post_init__(self):
        if self.nodes < 1:
            raise ValueError("axis needs at least one node")
        if len(self.coords) != self.nodes:
            raise ValueError("coords length must equal nodes")
        if self.periodic and self.period is None:
            raise ValueError("periodic axis needs a period")

    @property
    def edges(self):
        return self.nodes if self.periodic else self.nodes - 1


def periodic_axis(nodes, period=2.0 * np.pi):
    step = period / nodes
    return Axis(nodes, True, tuple(step * i for i in range(nodes)), period)


def bounded_axis(nodes, radius):
    coords = np.linspace(-radius, radius, nodes)
    return Axis(nodes, False, tuple(float(c) for c in coords))


def _popcount(x):
    return bin(x).count("1")


class CubicalGrid:
    """Product cell complex of per-axis node/edge intervals.

    Cells of degree d are indexed contiguously: masks with d set bits in
    increasing order, then C-order over the per-axis index ranges.
    """

    kind = "cubical"

    def __init__(self, axes):
        self.axes = tuple(axes)
        self.dim = len(self.axes)
        self.masks_by_degree = [
            [m for m in range(1 << self.dim) if _popcount(m) == d]
            for d in range(self.dim + 1)
        ]
        self._shape = {}
        self._size = {}
        self._offset = {}
        for d, masks in enumerate(self.masks_by_degree):
            off = 0
            for m in masks:
                shape = tuple(
                    ax.edges if (m >> i) & 1 else ax.nodes
                    for i, ax in enumerate(self.axes)
                )
                self._shape[m] = shape
                size = 1
                for s in shape:
                    size *= s
                self._size[m] = size
                self._offset[m] = off
                off += size
        self._boundary_cache = {}
        self._vertex_cache = {}
        self.canonical_basis = None
        self.model = None

    # -- sizes and indexing -------------------------------------------------

    @property
    def n_vertices(self):
        return self._size[0]

    def n_cells(self, degree):
        if degree < 0 or degree > self.dim:
            return 0
        return sum(self._size[m] for m in self.masks_by_degree[degree])

    @property
    def total_cells(self):
        return sum(self.n_cells(d) for d in range(self.dim + 1))

    def mask_shape(self, mask):
        return self._shape[mask]

    def mask_offset(self, mask):
        return self._offset[mask]

    def mask_size(self, mask):
        return self._size[mask]

    def cell_index(self, mask, coords):
        flat = int(np.ravel_multi_index(tuple(coords), self._shape[mask])) if self.dim else 0
        return self._offset[mask] + flat

    def cell_of_index(self, degree, index):
        for m in self.masks_by_degree[degree]:
            if index < self._offset[m] + self._size[m]:
                local = index - self._offset[m]
                coords = np.unravel_index(local, self._shape[m]) if self.dim else ()
                return m, tuple(int(c) for c in coords)
        raise IndexError(index)

    def vertex_index(self, coords):
        return self.cell_index(0, coords)

    def node_coords(self, vertex_index):
        _, coords = self.cell_of_index(0, vertex_index)
        return tuple(self.axes[i].coords[c] for i, c in enumerate(coords))

    # -- boundary operator ---------------------------------------------------

    def boundary(self, degree):
        """(rows, cols, signs) of the boundary map degree -> degree-1."""
        if degree in self._boundary_cache:
            return self._boundary_cache[degree]
        rows_out, cols_out, signs_out = [], [], []
        if 1 <= degree <= self.dim:
            for m in self.masks_by_degree[degree]:
                shape = self._shape[m]
                n = self._size[m]
                idx = np.unravel_index(np.arange(n), shape) if n else ()
                pos = 0
                for j in range(self.dim):
                    if not (m >> j) & 1:
                        continue
                    fmask = m & ~(1 << j)
                    fshape = self._shape[fmask]
                    ax = self.axes[j]
                    base_sign = 1 if pos % 2 == 0 else -1
                    for top in (False, True):
                        fcoords = list(idx)
                        cj = idx[j]
                        if top:
                            cj = (cj + 1) % ax.nodes if ax.periodic else cj + 1
                        fcoords[j] = cj
                        flat = np.ravel_multi_index(tuple(fcoords), fshape)
                        rows_out.append(self._offset[fmask] + flat)
                        cols_out.append(self._offset[m] + np.arange(n))
                        sgn = base_sign if top else -base_sign
                        signs_out.append(np.full(n, sgn, dtype=np.int8))
                    pos += 1
        if rows_out:
            rows = np.concatenate(rows_out).astype(np.int64)
            cols = np.concatenate(cols_out).astype(np.int64)
            signs = np.concatenate(signs_out)
        else:
            rows = np.zeros(0, dtype=np.int64)
            cols = np.zeros(0, dtype=np.int64)
            signs = np.zeros(0, dtype=np.int8)
        self._boundary_cache[degree] = (rows, cols, signs)
        return self._boundary_cache[degree]

    # -- values and vertices ---------------------------------------------------

    def lower_star_values(self, vertex_values):
        """Per-degree cell values: each cell takes the max over its corners."""
        grid = np.asarray(vertex_values, dtype=float).reshape(
            tuple(ax.nodes for ax in self.axes))
        out = []
        for d in range(self.dim + 1):
            parts = []
            for m in self.masks_by_degree[d]:
                arr = grid
                for j in range(self.dim):
                    if not (m >> j) & 1:
                        continue
                    ax = self.axes[j]
                    if ax.periodic:
                        arr = np.maximum(arr, np.roll(arr, -1, axis=j))
                    else:
                        lo = [slice(None)] * self.dim
                        hi = [slice(None)] * self.dim
                        lo[j] = slice(0, ax.nodes - 1)
                        hi[j] = slice(1, ax.nodes)
                        arr = np.maximum(arr[tuple(lo)], arr[tuple(hi)])
                parts.append(arr.ravel())
            out.append(np.concatenate(parts) if parts else np.zeros(0))
        return out

    def cell_vertices(self, degree):
        """(n_cells, 2^degree) array of corner vertex indices."""
        if degree in self._vertex_cache:
            return self._vertex_cache[degree]
        blocks = []
        vshape = self._shape[0]
        for m in self.masks_by_degree[degree]:
            shape = self._shape[m]
            n = self._size[m]
            idx = np.unravel_index(np.arange(n), shape) if n and self.dim else ()
            edge_axes = [j for j in range(self.dim) if (m >> j) & 1]
            corners = []
            for b in range(1 << degree):
                coords = list(idx)
                for t, j in enumerate(edge_axes):
                    if (b >> t) & 1:
                        ax = self.axes[j]
                        cj = coords[j] + 1
                        if ax.periodic:
                            cj = cj % ax.nodes
                        coords[j] = cj
                flat = (np.ravel_multi_index(tuple(coords), vshape)
                        if self.dim else np.zeros(n, dtype=np.int64))
                corners.append(flat)
            blocks.append(np.stack(corners, axis=1) if n else
                          np.zeros((0, 1 << degree), dtype=np.int64))
        out = (np.concatenate(blocks, axis=0) if blocks
               else np.zeros((0, 1), dtype=np.int64))
        self._vertex_cache[degree] = out
        return out

    # -- products and cross chains ---------------------------------------------

    def product(self, other: "CubicalGrid") -> "CubicalGrid":
        return CubicalGrid(self.axes + other.axes)

    def product_cell_index(self, other, prod, deg_a, idx_a, deg_b, idx_b):
        """Index in `prod` of the product of a cell of self and one of other."""
        ma, ca = self.cell_of_index(deg_a, idx_a)
        mb, cb = other.cell_of_index(deg_b, idx_b)
        mask = ma | (mb << self.dim)
        return prod.cell_index(mask, ca + cb)


def cross_chain(grid_a, chain_a, deg_a, grid_b, chain_b, deg_b, prod=None):
    """Cross product of cubical chains: cell-wise products, degree adds.

    Over GF(2) the cross product of two cycles is a cycle.  Returns
    (product_grid, cell index array of degree deg_a+deg_b).
    """
    if prod is None:
        prod = grid_a.product(grid_b)
    a = np.asarray(chain_a, dtype=np.int64).ravel()
    b = np.asarray(chain_b, dtype=np.int64).ravel()
    out = []
    for ma in grid_a.masks_by_degree[deg_a]:
        sa = grid_a.mask_offset(ma)
        aa = a[(a >= sa) & (a < sa + grid_a.mask_size(ma))] - sa
        if not len(aa):
            continue
        for mb in grid_b.masks_by_degree[deg_b]:
            sb = grid_b.mask_offset(mb)
            bb = b[(b >= sb) & (b < sb + grid_b.mask_size(mb))] - sb
            if not len(bb):
                continue
            mask = ma | (mb << grid_a.dim)
            size_b = grid_b.mask_size(mb)
            idx = prod.mask_offset(mask) + (aa[:, None] * size_b + bb[None, :])
            out.append(idx.ravel())
    res = (np.sort(np.concatenate(out)) if out
           else np.zeros(0, dtype=np.int64))
    return prod, res
