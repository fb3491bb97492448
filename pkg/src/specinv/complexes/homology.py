"""Homology of cell complexes: Betti numbers, bases, induced maps.

GF(2) computations run on the reduction kernel; rational ones go through
`fields` with the signed incidence coefficients.  Cells are addressed by
(degree, index within degree) using each complex's fixed ordering, so all
results are reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import fields
from .._kernel import ReducedBasis
from ..errors import CapabilityError, InputError


def _aggregate(rows, cols, signs, mod2):
    """Combine duplicate (col, row) incidences; drop net-zero entries."""
    if len(rows) == 0:
        return rows.astype(np.int64), cols.astype(np.int64), signs.astype(np.int64)
    order = np.lexsort((rows, cols))
    rows, cols, signs = rows[order], cols[order], signs[order].astype(np.int64)
    key_change = np.empty(len(rows), dtype=bool)
    key_change[0] = True
    key_change[1:] = (rows[1:] != rows[:-1]) | (cols[1:] != cols[:-1])
    starts = np.flatnonzero(key_change)
    sums = np.add.reduceat(signs, starts)
    keep = (sums % 2 != 0) if mod2 else (sums != 0)
    return rows[starts][keep], cols[starts][keep], sums[keep]


def boundary_gf2_csc(cpx, degree, col_mask=None, row_mask=None, row_rank=None,
                     drop_masked_rows=False):
    """CSC arrays of the degree boundary map over GF(2).

    col_mask / row_mask restrict to a subcomplex (faces of selected cells
    must be selected unless drop_masked_rows is set, which silently drops
    them: the quotient chain complex of a relative pair).  row_rank
    optionally relabels rows (after masking) to an arbitrary order, e.g. a
    filtration order.  Returns (indptr, indices, nrows, ncols).
    """
    rows, cols, signs = cpx.boundary(degree)
    rows, cols, _ = _aggregate(rows, cols, signs, mod2=True)
    n_rows_full = cpx.n_cells(degree - 1)
    n_cols_full = cpx.n_cells(degree)

    if col_mask is not None:
        keep = col_mask[cols]
        rows, cols = rows[keep], cols[keep]
        col_new = np.cumsum(col_mask) - 1
        cols = col_new[cols]
        ncols = int(col_mask.sum())
    else:
        ncols = n_cols_full
    if row_mask is not None:
        inside = row_mask[rows]
        if drop_masked_rows:
            rows, cols = rows[inside], cols[inside]
        elif not inside.all():
            raise InputError("subcomplex is not closed under faces")
        row_new = np.cumsum(row_mask) - 1
        rows = row_new[rows]
        nrows = int(row_mask.sum())
    else:
        nrows = n_rows_full
    if row_rank is not None:
        rows = np.asarray(row_rank)[rows]

    order = np.lexsort((rows, cols))
    rows, cols = rows[order], cols[order]
    indptr = np.zeros(ncols + 1, dtype=np.int64)
    np.add.at(indptr, cols + 1, 1)
    indptr = np.cumsum(indptr)
    return indptr, rows.astype(np.int32), nrows, ncols


def permute_csc_columns(indptr, indices, order):
    """Reorder CSC columns; used to feed reductions in filtration order."""
    order = np.asarray(order, dtype=np.int64)
    counts = np.diff(indptr)
    new_counts = counts[order]
    new_indptr = np.zeros(len(order) + 1, dtype=np.int64)
    new_indptr[1:] = np.cumsum(new_counts)
    total = int(new_indptr[-1])
    if total:
        starts = indptr[:-1][order]
        offsets = np.arange(total) - np.repeat(new_indptr[:-1], new_counts)
        gather = np.repeat(starts, new_counts) + offsets
        new_indices = indices[gather]
    else:
        new_indices = np.zeros(0, dtype=np.int32)
    return new_indptr, new_indices


def boundary_field_matrix(cpx, degree, field, col_mask=None, row_mask=None):
    """Boundary map as a SparseColumnMatrix over the given field."""
    rows, cols, signs = cpx.boundary(degree)
    mod2 = field is fields.GF2
    rows, cols, vals = _aggregate(rows, cols, signs, mod2=mod2)
    nrows = cpx.n_cells(degree - 1)
    ncols = cpx.n_cells(degree)
    if col_mask is not None:
        keep = col_mask[cols]
        rows, cols, vals = rows[keep], cols[keep], vals[keep]
        col_new = np.cumsum(col_mask) - 1
        cols = col_new[cols]
        ncols = int(col_mask.sum())
    if row_mask is not None:
        if len(rows) and not row_mask[rows].all():
            raise InputError("subcomplex is not closed under faces")
        row_new = np.cumsum(row_mask) - 1
        rows = row_new[rows] if len(rows) else rows
        nrows = int(row_mask.sum())
    columns = [[] for _ in range(ncols)]
    order = np.lexsort((rows, cols))
    for k in order:
        columns[cols[k]].append((int(rows[k]), int(vals[k]) % 2 if mod2 else int(vals[k])))
    return fields.SparseColumnMatrix(nrows, ncols, columns, field)


def validate_boundary_squares_to_zero(cpx):
    """Check the chain-complex identity on construction (over Z)."""
    for degree in range(2, cpx.dim + 1):
        hi = boundary_field_matrix(cpx, degree, fields.QQ)
        lo = boundary_field_matrix(cpx, degree - 1, fields.QQ)
        for j in range(hi.cols):
            acc = {}
            for r, c in hi.columns[j]:
                for rr, cc in lo.columns[r]:
                    acc[rr] = acc.get(rr, 0) + c * cc
            if any(v != 0 for v in acc.values()):
                raise InputError(
                    f"boundary of boundary is nonzero in degree {degree}")


class _GF2Span:
    """Incremental GF(2) span on top of an optional reduced basis.

    Inserted chains are numbered; solve() expresses a chain over the
    inserted ones modulo the base span (boundaries contribute nothing to
    the expression, which is exactly what homology coordinates need).
    """

    def __init__(self, base: ReducedBasis | None = None):
        self.base = base
        self.extra = {}  # leading row -> (bits, combo over inserted chains)
        self.count = 0
        self._base_bits = {}

    def _base_column(self, low):
        if low not in self._base_bits:
            bits = None
            if self.base is not None:
                k = int(self.base.pivot_of_row[low])
                if k >= 0:
                    bits = 0
                    for r in self.base.column(k):
                        bits |= 1 << int(r)
            self._base_bits[low] = bits
        return self._base_bits[low]

    def _reduce(self, x):
        combo = 0
        while x:
            low = x.bit_length() - 1
            hit = self.extra.get(low)
            if hit is not None:
                x ^= hit[0]
                combo ^= hit[1]
                continue
            base_col = self._base_column(low)
            if base_col is None:
                break
            x ^= base_col
        return x, combo

    def residual(self, chain):
        x = 0
        for r in np.asarray(chain, dtype=np.int64):
            x |= 1 << int(r)
        return self._reduce(x)[0]

    def add(self, chain):
        """Insert chain; True if it enlarged the span."""
        x = 0
        for r in np.asarray(chain, dtype=np.int64):
            x |= 1 << int(r)
        x, combo = self._reduce(x)
        if x == 0:
            self.count += 1
            return False
        self.extra[x.bit_length() - 1] = (x, combo ^ (1 << self.count))
        self.count += 1
        return True

    def solve(self, chain):
        """Combo bitmask over inserted chains expressing `chain`, or None."""
        x = 0
        for r in np.asarray(chain, dtype=np.int64):
            x |= 1 << int(r)
        x, combo = self._reduce(x)
        if x != 0:
            return None
        return combo


def _bits_to_array(x):
    out = []
    while x:
        lsb = x & -x
        out.append(lsb.bit_length() - 1)
        x ^= lsb
    return np.asarray(out, dtype=np.int64)


def betti_numbers(cpx, field=fields.GF2):
    """Betti vector (beta_0, ..., beta_dim) over the given field."""
    ranks = []
    for degree in range(cpx.dim + 2):
        if degree < 1 or degree > cpx.dim:
            ranks.append(0)
            continue
        if field is fields.GF2:
            indptr, indices, nrows, _ = boundary_gf2_csc(cpx, degree)
            ranks.append(ReducedBasis(indptr, indices, nrows).rank)
        else:
            ranks.append(fields.rank(boundary_field_matrix(cpx, degree, field)))
    return [cpx.n_cells(d) - ranks[d] - ranks[d + 1] for d in range(cpx.dim + 1)]


def cycle_basis_gf2(cpx, degree, col_mask=None):
    """Chains generating the degree-cycles of (a subcomplex of) cpx.

    Chains are reported as arrays of cell ids in the parent complex.
    """
    indptr, indices, nrows, ncols = boundary_gf2_csc(cpx, degree, col_mask=col_mask)
    if ncols == 0:
        return []
    basis = ReducedBasis(indptr, indices, nrows, want_transform=True)
    if col_mask is not None:
        cell_ids = np.flatnonzero(col_mask)
    else:
        cell_ids = np.arange(cpx.n_cells(degree))
    out = []
    for j in range(ncols):
        if len(basis.column(j)) == 0:
            out.append(cell_ids[np.asarray(basis.transform_column(j), dtype=np.int64)])
    return out


def boundary_span_gf2(cpx, degree, col_mask=None):
    """ReducedBasis spanning the degree-boundaries (image of d(degree+1))."""
    indptr, indices, nrows, _ = boundary_gf2_csc(cpx, degree + 1, col_mask=col_mask)
    return ReducedBasis(indptr, indices, nrows)


def homology_basis_gf2(cpx, degree):
    """Representative cycles for a basis of H_degree over GF(2).

    Built-in models return their canonical annotation; other complexes get
    a computed basis (deterministic for a fixed complex).
    """
    if getattr(cpx, "canonical_basis", None) is not None:
        return [np.asarray(ch, dtype=np.int64)
                for _, ch in cpx.canonical_basis.get(degree, [])]
    cache = getattr(cpx, "_computed_basis", None)
    if cache is None:
        cache = {}
        cpx._computed_basis = cache
    if degree not in cache:
        span = _GF2Span(boundary_span_gf2(cpx, degree))
        reps = []
        for z in cycle_basis_gf2(cpx, degree):
            if span.add(z):
                reps.append(np.asarray(sorted(z), dtype=np.int64))
        cache[degree] = reps
    return cache[degree]


def class_coordinates_gf2(cpx, degree, chain):
    """Coordinates of a cycle in the homology basis of cpx; None if unsolvable."""
    reps = homology_basis_gf2(cpx, degree)
    span = _GF2Span(boundary_span_gf2(cpx, degree))
    for w in reps:
        span.add(w)
    combo = span.solve(chain)
    if combo is None:
        return None
    return tuple((combo >> i) & 1 for i in range(len(reps)))


@dataclass(frozen=True)
class HomologyClass:
    """Nonzero class of the total graded homology, in the canonical basis.

    components lists (degree, coefficient tuple) pairs for the nonzero
    graded parts; a class with one component is homogeneous.  Selector
    values of mixed classes are maxima over their components, since a
    graded map hits a class exactly when it hits every component.
    """

    complex: object
    components: tuple

    def __post_init__(self):
        if not self.components:
            raise InputError("homology class must be nonzero")
        seen = set()
        for degree, coeffs in self.components:
            if degree in seen:
                raise InputError("duplicate degree in class components")
            seen.add(degree)
            if not any(coeffs):
                raise InputError("homology class components must be nonzero")
            reps = homology_basis_gf2(self.complex, degree)
            if len(coeffs) != len(reps):
                raise InputError(
                    f"expected {len(reps)} coefficients in degree {degree}")

    @classmethod
    def homogeneous(cls, cpx, degree, coeffs):
        return cls(cpx, ((int(degree), tuple(int(c) & 1 for c in coeffs)),))

    @classmethod
    def from_components(cls, cpx, by_degree):
        comps = tuple(sorted(
            (int(d), tuple(int(c) & 1 for c in coeffs))
            for d, coeffs in by_degree.items() if any(coeffs)))
        return cls(cpx, comps)

    @property
    def is_homogeneous(self):
        return len(self.components) == 1

    @property
    def degree(self):
        if not self.is_homogeneous:
            raise InputError("mixed class has no single degree")
        return self.components[0][0]

    @property
    def coeffs(self):
        if not self.is_homogeneous:
            raise InputError("mixed class has no single coefficient vector")
        return self.components[0][1]

    @property
    def max_degree(self):
        return max(d for d, _ in self.components)

    def component_classes(self):
        return [HomologyClass.homogeneous(self.complex, d, c)
                for d, c in self.components]

    def representative(self):
        """Cycle chain (cell ids) of a homogeneous class."""
        degree, coeffs = self.components[0][0], self.components[0][1]
        if not self.is_homogeneous:
            raise InputError("mixed class has no single representative")
        reps = homology_basis_gf2(self.complex, degree)
        acc = np.zeros(0, dtype=np.int64)
        for c, w in zip(coeffs, reps):
            if c:
                acc = np.setxor1d(acc, np.asarray(w, dtype=np.int64))
        return acc

    def label(self):
        parts = []
        for degree, coeffs in self.components:
            reps = homology_basis_gf2(self.complex, degree)
            if degree == 0 and len(reps) == 1 and coeffs == (1,):
                parts.append("pt")
            elif degree == self.complex.dim and len(reps) == 1 and coeffs == (1,):
                parts.append("fund")
            else:
                parts.append(f"b{degree}:" + "".join(str(c) for c in coeffs))
        return "+".join(parts)


class Subcomplex:
    """Face-closed selection of cells of a parent complex."""

    def __init__(self, parent, masks, validate=True):
        self.parent = parent
        self.masks = [np.asarray(m, dtype=bool) for m in masks]
        if len(self.masks) != parent.dim + 1:
            raise InputError("need one mask per degree")
        for d, m in enumerate(self.masks):
            if len(m) != parent.n_cells(d):
                raise InputError(f"mask length mismatch in degree {d}")
        if validate and not self.is_face_closed():
            raise InputError("cell selection is not closed under faces")

    @classmethod
    def full(cls, parent):
        return cls(parent,
                   [np.ones(parent.n_cells(d), dtype=bool)
                    for d in range(parent.dim + 1)], validate=False)

    @classmethod
    def empty(cls, parent):
        return cls(parent,
                   [np.zeros(parent.n_cells(d), dtype=bool)
                    for d in range(parent.dim + 1)], validate=False)

    @classmethod
    def closure(cls, parent, masks):
        masks = [np.array(m, dtype=bool, copy=True) for m in masks]
        for degree in range(parent.dim, 0, -1):
            rows, cols, _ = parent.boundary(degree)
            if len(rows):
                sel = masks[degree][cols]
                masks[degree - 1][rows[sel]] = True
        return cls(parent, masks, validate=False)

    def is_face_closed(self):
        for degree in range(1, self.parent.dim + 1):
            rows, cols, _ = self.parent.boundary(degree)
            if len(rows) and not self.masks[degree - 1][rows[self.masks[degree][cols]]].all():
                return False
        return True

    def n_cells(self, degree):
        return int(self.masks[degree].sum())

    @property
    def total_cells(self):
        return sum(int(m.sum()) for m in self.masks)

    def is_empty(self):
        return all(not m.any() for m in self.masks)

    def vertex_mask(self):
        """Vertices of the parent incident to any selected cell."""
        out = self.masks[0].copy()
        for degree in range(1, self.parent.dim + 1):
            sel = self.masks[degree]
            if sel.any():
                corners = self.parent.cell_vertices(degree)[sel]
                out[np.unique(corners)] = True
        return out

    def star_expand(self, steps=1):
        """Grow by combinatorial star steps: add every cell touching a
        current vertex, then close under faces."""
        sub = self
        for _ in range(steps):
            vmask = sub.vertex_mask()
            masks = []
            for degree in range(self.parent.dim + 1):
                corners = self.parent.cell_vertices(degree)
                masks.append(vmask[corners].any(axis=1) | sub.masks[degree])
            sub = Subcomplex.closure(self.parent, masks)
        return sub


def image_rank_gf2(sub: Subcomplex, degree):
    """Rank of H_degree(sub) -> H_degree(parent) over GF(2)."""
    span = _GF2Span(boundary_span_gf2(sub.parent, degree))
    rank = 0
    for z in cycle_basis_gf2(sub.parent, degree, col_mask=sub.masks[degree]):
        if span.add(z):
            rank += 1
    return rank


def sub_homology_basis_gf2(sub: Subcomplex, degree):
    """Representative cycles for a basis of H_degree(sub), as parent chains."""
    cofaces = sub.masks[degree + 1] if degree + 1 <= sub.parent.dim else None
    span = _GF2Span(boundary_span_gf2(sub.parent, degree, col_mask=cofaces))
    reps = []
    for z in cycle_basis_gf2(sub.parent, degree, col_mask=sub.masks[degree]):
        if span.add(z):
            reps.append(np.asarray(sorted(z), dtype=np.int64))
    return reps


def induced_map_matrix_gf2(sub: Subcomplex, degree):
    """Matrix of H_degree(sub) -> H_degree(parent) in the fixed bases.

    Columns are indexed by the computed basis of the subcomplex, rows by
    the parent's (canonical) basis.
    """
    domain = sub_homology_basis_gf2(sub, degree)
    n_rows = len(homology_basis_gf2(sub.parent, degree))
    mat = np.zeros((n_rows, len(domain)), dtype=np.uint8)
    for j, z in enumerate(domain):
        coords = class_coordinates_gf2(sub.parent, degree, z)
        if coords is None:
            raise InputError("subcomplex cycle is not a cycle of the parent")
        mat[:, j] = coords
    return mat


def class_from_label(cpx, label):
    """Parse a class spec: pt | fund | b<degree>:<index> | csv:<deg>:<coeffs>."""
    label = label.strip()
    if label == "pt":
        reps = homology_basis_gf2(cpx, 0)
        if not reps:
            raise InputError("complex has no degree-0 homology")
        return HomologyClass.homogeneous(cpx, 0, (1,) + (0,) * (len(reps) - 1))
    if label == "fund":
        top = cpx.dim
        reps = homology_basis_gf2(cpx, top)
        if len(reps) != 1:
            raise CapabilityError("no unique fundamental class on this model")
        return HomologyClass.homogeneous(cpx, top, (1,))
    if label.startswith("csv:"):
        parts = label[4:].split(":")
        if len(parts) != 2:
            raise InputError("csv class spec must be csv:<degree>:<c0,c1,...>")
        degree = int(parts[0])
        coeffs = tuple(int(c) & 1 for c in parts[1].split(","))
        return HomologyClass.homogeneous(cpx, degree, coeffs)
    if label.startswith("b"):
        head, _, idx = label[1:].partition(":")
        degree, index = int(head), int(idx)
        reps = homology_basis_gf2(cpx, degree)
        if not 0 <= index < len(reps):
            raise InputError(f"no basis class b{degree}:{index}")
        coeffs = tuple(1 if i == index else 0 for i in range(len(reps)))
        return HomologyClass.homogeneous(cpx, degree, coeffs)
    raise InputError(f"cannot parse class spec {label!r}")


def all_nonzero_classes(cpx, homogeneous_only=False, max_degree=None):
    """Every nonzero class of the total graded GF(2) homology.

    With homogeneous_only, only single-degree classes are produced.
    max_degree restricts the degrees allowed to appear in components.
    """
    degrees = [d for d in range(cpx.dim + 1)
               if max_degree is None or d <= max_degree]
    sizes = [len(homology_basis_gf2(cpx, d)) for d in degrees]
    if homogeneous_only:
        out = []
        for d, b in zip(degrees, sizes):
            for bits in range(1, 1 << b):
                coeffs = tuple((bits >> i) & 1 for i in range(b))
                out.append(HomologyClass.homogeneous(cpx, d, coeffs))
        return out
    total = sum(sizes)
    if total > 16:
        raise CapabilityError("homology too large for class enumeration")
    out = []
    for bits in range(1, 1 << total):
        by_degree = {}
        pos = 0
        for d, b in zip(degrees, sizes):
            coeffs = tuple((bits >> (pos + i)) & 1 for i in range(b))
            if any(coeffs):
                by_degree[d] = coeffs
            pos += b
        out.append(HomologyClass.from_components(cpx, by_degree))
    return out
