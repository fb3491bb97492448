"""Built-in closed-manifold models with canonical homology bases.

Supported models: point, circles and tori as periodic cubical grids, and
the 2-sphere as the boundary of a once-subdivided tetrahedron.  Canonical
basis chains are attached at construction so every downstream map is
reported in a reproducible basis.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from ..errors import InputError
from .cubical import CubicalGrid, periodic_axis
from .simplicial import SimplicialComplex

TORUS_PERIOD = 2.0 * np.pi


def _subset_chain(grid, axes_subset):
    """Cells of the coordinate subtorus spanned by the given axes at 0."""
    mask = 0
    for j in axes_subset:
        mask |= 1 << j
    shape = grid.mask_shape(mask)
    ranges = [np.arange(shape[j]) if (mask >> j) & 1 else np.asarray([0])
              for j in range(grid.dim)]
    if grid.dim == 0:
        return np.asarray([0], dtype=np.int64)
    grids = np.meshgrid(*ranges, indexing="ij")
    flat = np.ravel_multi_index([g.ravel() for g in grids], shape)
    return np.sort(grid.mask_offset(mask) + flat).astype(np.int64)


def point():
    grid = CubicalGrid(())
    grid.model = "point"
    grid.canonical_basis = {0: [("pt", np.asarray([0], dtype=np.int64))]}
    return grid


def torus(resolution):
    """Periodic cubical grid T^d with node coordinates 2*pi*j/n."""
    resolution = tuple(int(n) for n in resolution)
    if not resolution:
        return point()
    if any(n < 3 for n in resolution):
        raise InputError("cubical torus needs resolution >= 3 on every axis")
    grid = CubicalGrid([periodic_axis(n, TORUS_PERIOD) for n in resolution])
    grid.model = "cubical_torus"
    grid.resolution = resolution
    d = grid.dim
    basis = {}
    for degree in range(d + 1):
        entries = []
        for i, subset in enumerate(combinations(range(d), degree)):
            if degree == 0:
                label = "pt"
            elif degree == d:
                label = "fund"
            else:
                label = f"b{degree}:{i}"
            entries.append((label, _subset_chain(grid, subset)))
        basis[degree] = entries
    grid.canonical_basis = basis
    return grid


def circle(resolution=8):
    return torus((resolution,))


def sphere2():
    """Boundary of a tetrahedron with every face subdivided once."""
    mids = {}
    verts = 4
    for e in combinations(range(4), 2):
        mids[e] = verts
        verts += 1
    triangles = []
    for face in combinations(range(4), 3):
        a, b, c = face
        mab, mac, mbc = mids[(a, b)], mids[(a, c)], mids[(b, c)]
        triangles.extend([
            (a, mab, mac),
            (b, mab, mbc),
            (c, mac, mbc),
            (mab, mac, mbc),
        ])
    cpx = SimplicialComplex(verts, [tuple(sorted(t)) for t in triangles])
    cpx.model = "s2"
    fund = np.asarray(
        [cpx.simplex_index(tuple(sorted(t))) for t in triangles], dtype=np.int64)
    cpx.canonical_basis = {
        0: [("pt", np.asarray([cpx.simplex_index((0,))], dtype=np.int64))],
        2: [("fund", np.sort(fund))],
    }
    return cpx


def from_id(model_id):
    """Resolve a short model id: point | s1[:n] | t2[:nxn] | t3[:nxnxn] | s2."""
    mid = model_id.strip().lower()
    name, _, res = mid.partition(":")
    if name == "point":
        return point()
    if name == "s2":
        return sphere2()
    if name in ("s1", "t1"):
        return circle(int(res) if res else 8)
    if name in ("t2", "t3"):
        d = int(name[1])
        if res:
            parts = [int(p) for p in res.split("x")]
            if len(parts) == 1:
                parts = parts * d
            if len(parts) != d:
                raise InputError(f"resolution {res!r} does not fit {name}")
        else:
            parts = [8] * d
        return torus(tuple(parts))
    raise InputError(f"unknown model id {model_id!r}")
