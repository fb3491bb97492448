"""Intersection products, cup products, and cup-length.

Built-in models carry exact intersection tables on their canonical bases
(tori: transversal coordinate subtori; sphere: fundamental class as unit).
Simplicial complexes compute cup-length through Alexander-Whitney cup
products on cohomology, which doubles as the validation oracle for the
tables.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .._kernel import ReducedBasis
from ..errors import CapabilityError, InputError
from .homology import (HomologyClass, _aggregate, _GF2Span,
                       homology_basis_gf2)
from .simplicial import SimplicialComplex


def _torus_tables(cpx):
    if getattr(cpx, "_torus_table", None) is None:
        d = cpx.dim
        subsets = {}
        index = {}
        for degree in range(d + 1):
            combos = list(combinations(range(d), degree))
            subsets[degree] = [frozenset(c) for c in combos]
            for i, c in enumerate(combos):
                index[frozenset(c)] = (degree, i)
        cpx._torus_table = (subsets, index)
    return cpx._torus_table


def _basis_product(cpx, deg_a, i, deg_b, j):
    """Intersection of canonical basis elements: None or (degree, index)."""
    model = getattr(cpx, "model", None)
    d = cpx.dim
    if model == "point":
        return (0, 0)
    if model == "cubical_torus":
        subsets, index = _torus_tables(cpx)
        sa, sb = subsets[deg_a][i], subsets[deg_b][j]
        if sa | sb != frozenset(range(d)):
            return None
        return index[sa & sb]
    if model == "s2":
        # basis: degree 0 -> [pt], degree 2 -> [fund]; [fund] is the unit.
        if deg_a == 2:
            return (deg_b, j)
        if deg_b == 2:
            return (deg_a, i)
        return None
    raise CapabilityError(
        f"no intersection table for model {model or cpx.kind!r}")


def intersection_product(a: HomologyClass, b: HomologyClass):
    """Intersection product a . b on a built-in model.

    Bilinear over all graded components; a component pair of degrees
    (p, q) lands in degree p+q-dim.  Returns None when the product
    vanishes.
    """
    if a.complex is not b.complex:
        raise InputError("classes live on different complexes")
    cpx = a.complex
    acc = {}
    for deg_a, coeffs_a in a.components:
        for deg_b, coeffs_b in b.components:
            out_degree = deg_a + deg_b - cpx.dim
            if out_degree < 0:
                continue
            n_out = len(homology_basis_gf2(cpx, out_degree))
            vec = acc.setdefault(out_degree, np.zeros(n_out, dtype=np.uint8))
            for i, ca in enumerate(coeffs_a):
                if not ca:
                    continue
                for j, cb in enumerate(coeffs_b):
                    if not cb:
                        continue
                    hit = _basis_product(cpx, deg_a, i, deg_b, j)
                    if hit is None:
                        continue
                    deg, k = hit
                    if deg != out_degree:
                        raise InputError("inconsistent intersection table")
                    vec[k] ^= 1
    by_degree = {d: tuple(int(c) for c in v) for d, v in acc.items() if v.any()}
    if not by_degree:
        return None
    return HomologyClass.from_components(cpx, by_degree)


def _all_classes_of_degree(cpx, degree):
    b = len(homology_basis_gf2(cpx, degree))
    for bits in range(1, 1 << b):
        yield HomologyClass.homogeneous(
            cpx, degree, tuple((bits >> i) & 1 for i in range(b)))


def _cup_length_table(cpx):
    admissible = []
    for degree in range(cpx.dim + 1):
        if degree == cpx.dim:
            continue
        admissible.extend(_all_classes_of_degree(cpx, degree))
    if not admissible:
        return 1
    frontier = {(c.degree, c.coeffs): c for c in admissible}
    k = 1
    while True:
        nxt = {}
        for c in frontier.values():
            if c.degree == 0:
                continue  # another factor would land in negative degree
            for a in admissible:
                p = intersection_product(c, a)
                if p is not None:
                    nxt[(p.degree, p.coeffs)] = p
        if not nxt:
            return k + 1
        frontier = nxt
        k += 1


def _coboundary_csc(cpx, degree):
    """CSC of the GF(2) coboundary C^degree -> C^(degree+1)."""
    rows_b, cols_b, signs = cpx.boundary(degree + 1)
    rows, cols, _ = _aggregate(cols_b, rows_b, signs, mod2=True)
    nrows = cpx.n_cells(degree + 1)
    ncols = cpx.n_cells(degree)
    order = np.lexsort((rows, cols))
    rows, cols = rows[order], cols[order]
    indptr = np.zeros(ncols + 1, dtype=np.int64)
    np.add.at(indptr, cols + 1, 1)
    return np.cumsum(indptr), rows.astype(np.int32), nrows, ncols


def cohomology_basis_gf2(cpx, degree):
    """Representative GF(2) cocycles for a basis of H^degree."""
    indptr, indices, nrows, ncols = _coboundary_csc(cpx, degree)
    if ncols == 0:
        return []
    delta = ReducedBasis(indptr, indices, nrows, want_transform=True)
    cocycles = [np.asarray(delta.transform_column(j), dtype=np.int64)
                for j in range(ncols) if len(delta.column(j)) == 0]
    if degree == 0:
        cob_span = _GF2Span(None)
    else:
        p_lo, i_lo, nr_lo, _ = _coboundary_csc(cpx, degree - 1)
        cob_span = _GF2Span(ReducedBasis(p_lo, i_lo, nr_lo))
    reps = []
    for z in cocycles:
        if cob_span.add(z):
            reps.append(np.sort(z))
    return reps


def _cochain_bits(chain):
    x = 0
    for r in np.asarray(chain, dtype=np.int64):
        x |= 1 << int(r)
    return x


class _CohomologyRing:
    """GF(2) cohomology with AW cup products, for cup-length searches."""

    def __init__(self, cpx: SimplicialComplex):
        self.cpx = cpx
        self.reps = {}
        self.solvers = {}
        for degree in range(cpx.dim + 1):
            reps = cohomology_basis_gf2(cpx, degree)
            self.reps[degree] = reps
            if degree == 0:
                span = _GF2Span(None)
            else:
                p_lo, i_lo, nr_lo, _ = _coboundary_csc(cpx, degree - 1)
                span = _GF2Span(ReducedBasis(p_lo, i_lo, nr_lo))
            for w in reps:
                span.add(w)
            self.solvers[degree] = span

    def betti(self, degree):
        return len(self.reps.get(degree, []))

    def cochain(self, degree, coeffs):
        arr = np.zeros(self.cpx.n_cells(degree), dtype=np.uint8)
        for c, w in zip(coeffs, self.reps[degree]):
            if c:
                arr[w] ^= 1
        return arr

    def coordinates(self, degree, cochain_arr):
        """Class of a cocycle in the chosen basis; all-zero tuple if exact."""
        combo = self.solvers[degree].solve(np.flatnonzero(cochain_arr))
        if combo is None:
            raise InputError("cochain is not a cocycle")
        n = len(self.reps[degree])
        return tuple((combo >> i) & 1 for i in range(n))


def _cup_length_simplicial(cpx: SimplicialComplex):
    ring = _CohomologyRing(cpx)
    admissible = []
    for degree in range(1, cpx.dim + 1):
        b = ring.betti(degree)
        if b > 16:
            raise CapabilityError("cohomology too large for cup-length search")
        for bits in range(1, 1 << b):
            coeffs = tuple((bits >> i) & 1 for i in range(b))
            admissible.append((degree, coeffs))
    if not admissible:
        return 1
    frontier = set(admissible)
    k = 1
    while True:
        nxt = set()
        for (dc, cc) in frontier:
            for (da, ca) in admissible:
                if dc + da > cpx.dim:
                    continue
                prod = cpx.cup_cochain(ring.cochain(dc, cc), dc,
                                       ring.cochain(da, ca), da)
                coords = ring.coordinates(dc + da, prod)
                if any(coords):
                    nxt.add((dc + da, coords))
        if not nxt:
            return k + 1
        frontier = nxt
        k += 1


def cup_length(cpx):
    """Largest k+1 with a nonzero k-fold product of classes of degree != dim.

    Built-in models search their intersection tables exhaustively over all
    nonzero GF(2) classes; simplicial complexes use Alexander-Whitney cup
    products in cohomology.  Returns 1 when no admissible class exists.
    """
    model = getattr(cpx, "model", None)
    if model in ("point", "cubical_torus", "s2"):
        return _cup_length_table(cpx)
    if isinstance(cpx, SimplicialComplex):
        return _cup_length_simplicial(cpx)
    raise CapabilityError("no product structure available for this complex")
