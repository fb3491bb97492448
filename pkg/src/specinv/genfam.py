"""Generating families quadratic at infinity over torus bases.

A family is a sampled function on (torus base) x (fiber box) whose values
match a diagonal quadratic form of declared signature near the box edge.
Its front is the set of fiber-critical points pushed to 1-jet coordinates
(q, dS/dq, S); its spectral invariants are min-max values of the lower
star filtration of the product complex, taken relative to the negative
boundary region of the box so that the fiber contributes one homology
class in degree i_minus (the negative-axes disk rel its boundary).  That
relative pair is fixed by the grid alone, which makes the invariants
exactly 1-Lipschitz in the sampled values.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field

import numpy as np

from ._kernel import ReducedBasis
from .complexes.cubical import CubicalGrid, bounded_axis, cross_chain
from .complexes.homology import (HomologyClass, Subcomplex, boundary_gf2_csc,
                                 permute_csc_columns)
from .complexes.io import complex_from_dict, complex_to_dict
from .complexes.models import TORUS_PERIOD
from .complexes.products import cup_length
from .errors import InputError
from .minmax import NontrivialityReport, is_homologically_nontrivial

_TINY = 1e-12


class GeneratingFamily:
    """Sampled family on base x fiber with quadratic-at-infinity signature.

    The first i_minus fiber axes carry the negative squares of the
    reference form Q; fiber resolutions must be odd (0 must be a grid
    node) and at least 5 on negative axes so the boundary slabs leave the
    middle of the box free.
    """

    def __init__(self, base, fiber, i_minus, i_plus, values,
                 boundary_tolerance):
        if not isinstance(base, CubicalGrid) or (
                base.dim and not all(ax.periodic for ax in base.axes)):
            raise InputError("base must be a periodic cubical grid")
        if not isinstance(fiber, CubicalGrid) or any(
                ax.periodic for ax in fiber.axes):
            raise InputError("fiber must be a bounded cubical grid")
        self.base = base
        self.fiber = fiber
        self.i_minus = int(i_minus)
        self.i_plus = int(i_plus)
        if self.i_minus < 0 or self.i_plus < 0:
            raise InputError("signature entries must be nonnegative")
        if self.i_minus + self.i_plus != fiber.dim:
            raise InputError(
                f"signature {self.i_minus}+{self.i_plus} != fiber_dim {fiber.dim}")
        for j, ax in enumerate(fiber.axes):
            if ax.nodes < 3 or ax.nodes % 2 == 0:
                raise InputError(
                    f"fiber_resolution axis {j}: must be odd and >= 3")
            if j < self.i_minus and ax.nodes < 5:
                raise InputError(
                    f"fiber_resolution axis {j}: negative axes need >= 5 nodes")
        self.boundary_tolerance = float(boundary_tolerance)
        if self.boundary_tolerance < 0:
            raise InputError("boundary_tolerance must be nonnegative")
        shape = self.grid_shape
        self.values = np.asarray(values, dtype=float).reshape(shape)
        if not np.isfinite(self.values).all():
            raise InputError("family values must be finite")
        self._check_boundary_layer()
        self._cache = {}

    # -- structure -----------------------------------------------------------

    @property
    def grid_shape(self):
        return tuple(ax.nodes for ax in self.base.axes) + tuple(
            ax.nodes for ax in self.fiber.axes)

    @property
    def fiber_dim(self):
        return self.fiber.dim

    def quadratic_values(self):
        """Reference form Q on the fiber grid (negative axes first)."""
        shape = tuple(ax.nodes for ax in self.fiber.axes)
        q = np.zeros(shape)
        for j, ax in enumerate(self.fiber.axes):
            coords = np.asarray(ax.coords) ** 2
            sgn = -1.0 if j < self.i_minus else 1.0
            q = q + sgn * coords.reshape(
                (1,) * j + (-1,) + (1,) * (self.fiber.dim - j - 1))
        return q

    def _check_boundary_layer(self):
        if self.fiber.dim == 0:
            return
        q = self.quadratic_values()
        dev = np.abs(self.values - q)
        outer = np.zeros(q.shape, dtype=bool)
        for j, ax in enumerate(self.fiber.axes):
            sel = np.zeros(ax.nodes, dtype=bool)
            sel[0] = sel[-1] = True
            outer |= sel.reshape(
                (1,) * j + (-1,) + (1,) * (self.fiber.dim - j - 1))
        worst = float(dev[..., outer].max())
        if worst > self.boundary_tolerance + _TINY:
            raise InputError(
                "values: family deviates from the quadratic form by "
                f"{worst:.6g} on the outer fiber layer, beyond "
                f"boundary_tolerance={self.boundary_tolerance:.6g}")

    def shifted(self, constant):
        return GeneratingFamily(self.base, self.fiber, self.i_minus,
                                self.i_plus, self.values + constant,
                                self.boundary_tolerance + abs(constant))

    # -- product complex machinery --------------------------------------------

    def product_complex(self):
        if "product" not in self._cache:
            self._cache["product"] = self.base.product(self.fiber)
        return self._cache["product"]

    def product_cell_values(self):
        if "cell_values" not in self._cache:
            prod = self.product_complex()
            self._cache["cell_values"] = prod.lower_star_values(
                self.values.ravel())
        return self._cache["cell_values"]

    def rel_mask(self, degree):
        """Cells of the product complex inside a negative outer slab.

        The subcomplex quotiented out: every cell whose fiber extent along
        some negative axis stays within one grid step of the box edge.
        """
        key = ("rel", degree)
        if key not in self._cache:
            prod = self.product_complex()
            base_dim = self.base.dim
            parts = []
            for mask in prod.masks_by_degree[degree]:
                shape = prod.mask_shape(mask)
                sel = np.zeros(shape, dtype=bool)
                for j in range(self.i_minus):
                    axis = base_dim + j
                    m = self.fiber.axes[j].nodes
                    if (mask >> axis) & 1:
                        picks = [0, m - 2]
                    else:
                        picks = [0, 1, m - 2, m - 1]
                    v = np.zeros(shape[axis], dtype=bool)
                    v[picks] = True
                    sel |= v.reshape(
                        (1,) * axis + (-1,) + (1,) * (len(shape) - axis - 1))
                parts.append(sel.ravel())
            self._cache[key] = (np.concatenate(parts) if parts
                                else np.zeros(0, dtype=bool))
        return self._cache[key]

    def theta_chain(self):
        """Negative-axes disk rel boundary: the fiber chain of the shift."""
        fiber = self.fiber
        mask = (1 << self.i_minus) - 1
        if fiber.dim == 0:
            return np.asarray([0], dtype=np.int64)
        shape = fiber.mask_shape(mask)
        ranges = []
        for j, ax in enumerate(fiber.axes):
            if j < self.i_minus:
                ranges.append(np.arange(shape[j]))
            else:
                ranges.append(np.asarray([(ax.nodes - 1) // 2]))
        grids = np.meshgrid(*ranges, indexing="ij")
        flat = np.ravel_multi_index([g.ravel() for g in grids], shape)
        return np.sort(fiber.mask_offset(mask) + flat).astype(np.int64)

    def _reduction(self, degree):
        key = ("reduction", degree)
        if key not in self._cache:
            self._cache[key] = _ShiftedSweep(self, degree)
        return self._cache[key]


class _ShiftedSweep:
    """Reduced quotient boundary in one degree of the product filtration."""

    def __init__(self, fam: GeneratingFamily, degree):
        prod = fam.product_complex()
        keep = ~fam.rel_mask(degree)
        self.keep = keep
        self.kept_ids = np.flatnonzero(keep)
        cv = fam.product_cell_values()[degree][keep]
        self.order = np.argsort(cv, kind="stable")
        self.rank_of_kept = np.empty(len(cv), dtype=np.int64)
        self.rank_of_kept[self.order] = np.arange(len(cv))
        self.sorted_values = cv[self.order]
        self.kept_index = np.full(fam.product_complex().n_cells(degree), -1,
                                  dtype=np.int64)
        self.kept_index[self.kept_ids] = np.arange(len(self.kept_ids))
        if degree + 1 <= prod.dim:
            keep_hi = ~fam.rel_mask(degree + 1)
            col_values = fam.product_cell_values()[degree + 1][keep_hi]
            indptr, indices, nrows, _ = boundary_gf2_csc(
                prod, degree + 1, col_mask=keep_hi, row_mask=keep,
                row_rank=self.rank_of_kept, drop_masked_rows=True)
            col_order = np.argsort(col_values, kind="stable")
            indptr, indices = permute_csc_columns(indptr, indices, col_order)
            self.basis = ReducedBasis(indptr, indices, nrows)
        else:
            self.basis = ReducedBasis(np.zeros(1, dtype=np.int64),
                                      np.zeros(0, dtype=np.int32), len(cv))

    def min_max_value(self, chain_cells):
        """Least possible top value over the relative homology class."""
        chain = np.asarray(chain_cells, dtype=np.int64)
        kept = self.kept_index[chain]
        kept = kept[kept >= 0]
        if len(kept) == 0:
            raise InputError("chain lies entirely in the quotiented region")
        ranks = np.sort(self.rank_of_kept[kept])
        residual = self.basis.eliminate(ranks)
        if len(residual) == 0:
            raise InputError("class vanishes in the relative homology")
        return float(self.sorted_values[int(residual[-1])])


def ell(alpha: HomologyClass, fam: GeneratingFamily) -> float:
    """Min-max spectral invariant of the family selected by a base class.

    The class is crossed with the negative-axes disk of the fiber box and
    swept through the lower-star filtration of the product complex
    relative to the negative boundary region; the value returned is a grid
    value of the family.  Mixed classes take the max over components.
    """
    if alpha.complex is not fam.base:
        raise InputError("class must live on the family's base complex")
    prod = fam.product_complex()
    best = None
    for comp in alpha.component_classes():
        degree = comp.degree + fam.i_minus
        _, chain = cross_chain(fam.base, comp.representative(), comp.degree,
                               fam.fiber, fam.theta_chain(), fam.i_minus,
                               prod=prod)
        value = fam._reduction(degree).min_max_value(chain)
        best = value if best is None else max(best, value)
    return best


def gamma(fam: GeneratingFamily) -> float:
    """Spectral norm: ell of the fundamental class minus ell of the point."""
    from .complexes.homology import class_from_label

    hi = ell(class_from_label(fam.base, "fund"), fam)
    lo = ell(class_from_label(fam.base, "pt"), fam)
    return hi - lo


def oplus(a: GeneratingFamily, b: GeneratingFamily) -> GeneratingFamily:
    """Fiberwise sum family on the product fiber; signatures add.

    Negative axes of both summands are moved in front so the convention
    (negative axes first) is preserved.
    """
    if a.base is not b.base:
        if (a.base.dim != b.base.dim or
                tuple(ax.nodes for ax in a.base.axes) !=
                tuple(ax.nodes for ax in b.base.axes)):
            raise InputError("summands live over different bases")
    base = a.base
    d = base.dim
    ka, kb = a.fiber_dim, b.fiber_dim
    va = a.values.reshape(a.values.shape + (1,) * kb)
    vb = b.values.reshape(
        b.values.shape[:d] + (1,) * ka + b.values.shape[d:])
    total = va + vb
    # axes: base | a-neg a-pos | b-neg b-pos  ->  base | a-neg b-neg a-pos b-pos
    perm = list(range(d))
    perm += [d + j for j in range(a.i_minus)]
    perm += [d + ka + j for j in range(b.i_minus)]
    perm += [d + a.i_minus + j for j in range(a.i_plus)]
    perm += [d + ka + b.i_minus + j for j in range(b.i_plus)]
    total = np.transpose(total, perm)
    fiber_axes = ([a.fiber.axes[j] for j in range(a.i_minus)]
                  + [b.fiber.axes[j] for j in range(b.i_minus)]
                  + [a.fiber.axes[a.i_minus + j] for j in range(a.i_plus)]
                  + [b.fiber.axes[b.i_minus + j] for j in range(b.i_plus)])
    fiber = CubicalGrid(fiber_axes)
    dev_a = float(np.abs(a.values - a.quadratic_values()).max()) if ka else 0.0
    dev_b = float(np.abs(b.values - b.quadratic_values()).max()) if kb else 0.0
    tol = max(a.boundary_tolerance + dev_b, b.boundary_tolerance + dev_a)
    return GeneratingFamily(base, fiber, a.i_minus + b.i_minus,
                            a.i_plus + b.i_plus, total, tol)


def split_family(base, f_values, fiber_resolution, box_radius, i_minus,
                 i_plus) -> GeneratingFamily:
    """Family f(q) + Q(e) for vertex values f on the base."""
    k = i_minus + i_plus
    fiber = CubicalGrid([bounded_axis(fiber_resolution, box_radius)
                         for _ in range(k)])
    f = np.asarray(f_values, dtype=float).reshape(
        tuple(ax.nodes for ax in base.axes))
    fam_shape = f.shape + tuple(ax.nodes for ax in fiber.axes)
    fam = np.zeros(fam_shape)
    fam += f.reshape(f.shape + (1,) * k)
    if k:
        qform = np.zeros(tuple(ax.nodes for ax in fiber.axes))
        for j, ax in enumerate(fiber.axes):
            sgn = -1.0 if j < i_minus else 1.0
            qform = qform + sgn * (np.asarray(ax.coords) ** 2).reshape(
                (1,) * j + (-1,) + (1,) * (k - j - 1))
        fam += qform.reshape((1,) * base.dim + qform.shape)
    tol = float(np.abs(f).max()) + _TINY if f.size else _TINY
    return GeneratingFamily(base, fiber, i_minus, i_plus, fam, tol)


# -- fronts and spectra -------------------------------------------------------


@dataclass
class FrontCloud:
    """Finite point set in 1-jet coordinates (q, p, z) over a torus base."""

    q: np.ndarray
    p: np.ndarray
    z: np.ndarray
    period: float = TORUS_PERIOD
    provenance: str = "loaded"

    def __post_init__(self):
        self.q = np.atleast_2d(np.asarray(self.q, dtype=float))
        self.p = np.atleast_2d(np.asarray(self.p, dtype=float))
        self.z = np.asarray(self.z, dtype=float).ravel()
        if self.q.shape != self.p.shape or len(self.q) != len(self.z):
            raise InputError("front cloud arrays have mismatched shapes")
        if not (np.isfinite(self.q).all() and np.isfinite(self.p).all()
                and np.isfinite(self.z).all()):
            raise InputError("front cloud coordinates must be finite")
        self.q = np.mod(self.q, self.period)

    def __len__(self):
        return len(self.z)

    @property
    def base_dim(self):
        return self.q.shape[1]


def front(fam: GeneratingFamily) -> FrontCloud:
    """Extract the front: 1-jet points over fiber-critical grid cells.

    A fiber cell is critical when every fiber-axis central difference
    changes sign (or vanishes) across it; each critical cell contributes
    its corner with the smallest gradient 1-norm.  Base derivatives are
    periodic central differences.
    """
    d, k = fam.base.dim, fam.fiber.dim
    S = fam.values
    base_axes = list(range(d))
    p_grids = []
    for a in base_axes:
        h = fam.base.axes[a].period / fam.base.axes[a].nodes
        p_grids.append((np.roll(S, -1, axis=a) - np.roll(S, 1, axis=a)) / (2 * h))

    if k == 0:
        qs = np.stack([g.ravel() for g in np.meshgrid(
            *[np.asarray(ax.coords) for ax in fam.base.axes], indexing="ij")],
            axis=-1) if d else np.zeros((1, 0))
        ps = np.stack([g.ravel() for g in p_grids], axis=-1) if d else np.zeros((1, 0))
        return FrontCloud(qs, ps, S.ravel(), provenance="extracted-from-gfqi")

    interior = tuple([slice(None)] * d + [slice(1, -1)] * k)
    grads = []
    for j in range(k):
        axis = d + j
        h = (fam.fiber.axes[j].coords[1] - fam.fiber.axes[j].coords[0])
        g = (np.take(S, np.arange(2, S.shape[axis]), axis=axis)
             - np.take(S, np.arange(0, S.shape[axis] - 2), axis=axis)) / (2 * h)
        # g lives on interior nodes of axis j; align onto the full interior
        idx = [slice(None)] * (d + k)
        for jj in range(k):
            if jj != j:
                idx[d + jj] = slice(1, -1)
        grads.append(g[tuple(idx)])

    # aggregate over the corners of interior fiber cells
    mins = [g.copy() for g in grads]
    maxs = [g.copy() for g in grads]
    for j in range(k):
        axis = d + j
        lo = [slice(None)] * (d + k)
        hi = [slice(None)] * (d + k)
        lo[axis] = slice(0, -1)
        hi[axis] = slice(1, None)
        mins = [np.minimum(m[tuple(lo)], m[tuple(hi)]) for m in mins]
        maxs = [np.maximum(m[tuple(lo)], m[tuple(hi)]) for m in maxs]
    critical = np.ones(mins[0].shape, dtype=bool)
    for mn, mx in zip(mins, maxs):
        critical &= (mn <= 0.0) & (mx >= 0.0)

    # corner of each critical cell with the least gradient 1-norm
    g1 = np.zeros(grads[0].shape)
    for g in grads:
        g1 += np.abs(g)
    corner_stacks = []
    offsets = []
    for b in range(1 << k):
        sl = [slice(None)] * (d + k)
        off = []
        for j in range(k):
            bit = (b >> j) & 1
            sl[d + j] = slice(1, None) if bit else slice(0, -1)
            off.append(bit)
        corner_stacks.append(g1[tuple(sl)])
        offsets.append(off)
    stacked = np.stack(corner_stacks, axis=0)
    best = np.argmin(stacked, axis=0)

    node_mask = np.zeros(S.shape, dtype=bool)
    crit_idx = np.nonzero(critical)
    best_at = best[crit_idx]
    offsets = np.asarray(offsets)
    node_idx = list(crit_idx)
    for j in range(k):
        # cell anchor in interior-node coordinates -> grid node index
        node_idx[d + j] = crit_idx[d + j] + 1 + offsets[best_at, j]
    node_mask[tuple(node_idx)] = True

    sel = np.nonzero(node_mask)
    qs = np.stack([np.asarray(fam.base.axes[a].coords)[sel[a]]
                   for a in range(d)], axis=-1) if d else np.zeros((len(sel[0]), 0))
    ps = np.stack([p_grids[a][sel] for a in range(d)], axis=-1) \
        if d else np.zeros((len(sel[0]), 0))
    zs = S[sel]
    return FrontCloud(qs, ps, zs, provenance="extracted-from-gfqi")


@dataclass
class Spectrum:
    """Clustered action values of the points on the zero wall."""

    values: list
    eps_p: float
    delta_z: float
    clusters: list = field(default_factory=list)  # (lo, hi, count)

    def as_dict(self):
        return {
            "values": [float(v) for v in self.values],
            "eps_p": self.eps_p,
            "delta_z": self.delta_z,
            "clusters": [
                {"lo": lo, "hi": hi, "count": n} for lo, hi, n in self.clusters
            ],
        }


def default_eps_p(fam: GeneratingFamily) -> float:
    """Twice the central-difference truncation estimate on the base grid."""
    bound = 0.0
    S = fam.values
    for a in range(fam.base.dim):
        n = fam.base.axes[a].nodes
        h = fam.base.axes[a].period / n
        d3 = (np.roll(S, -2, axis=a) - 2 * np.roll(S, -1, axis=a)
              + 2 * np.roll(S, 1, axis=a) - np.roll(S, 2, axis=a)) / (2 * h ** 3)
        bound = max(bound, h * h / 6.0 * float(np.abs(d3).max()))
    return 2.0 * bound + _TINY


def default_delta_z(z_values) -> float:
    """Half the smallest gap between detected clusters.

    Clusters are detected at the largest relative jump in the sorted list
    of consecutive differences; with no clear jump everything is one
    cluster.
    """
    z = np.sort(np.asarray(z_values, dtype=float).ravel())
    if len(z) < 2:
        return _TINY
    diffs = np.sort(np.diff(z))
    top = float(diffs[-1])
    if top <= _TINY:
        return _TINY
    floor = max(float(diffs[0]), _TINY)
    ratios = diffs[1:] / np.maximum(diffs[:-1], _TINY)
    split = int(np.argmax(ratios))
    if float(ratios[split]) < 8.0:
        return top + _TINY  # no clear separation: one cluster
    return 0.5 * float(diffs[split + 1])


def spectrum(cloud: FrontCloud, eps_p, delta_z=None) -> Spectrum:
    """Action values of points with |p| <= eps_p, single-linkage clustered."""
    if len(cloud) == 0:
        return Spectrum([], eps_p, delta_z if delta_z is not None else 0.0)
    if cloud.p.shape[1]:
        on_wall = np.max(np.abs(cloud.p), axis=1) <= eps_p
    else:
        on_wall = np.ones(len(cloud), dtype=bool)
    z = np.sort(cloud.z[on_wall])
    if len(z) == 0:
        return Spectrum([], eps_p, delta_z if delta_z is not None else 0.0)
    if delta_z is None:
        delta_z = default_delta_z(z)
    breaks = np.flatnonzero(np.diff(z) > delta_z)
    starts = np.concatenate([[0], breaks + 1])
    ends = np.concatenate([breaks, [len(z) - 1]])
    values, clusters = [], []
    for s, e in zip(starts, ends):
        lo, hi = float(z[s]), float(z[e])
        values.append(0.5 * (lo + hi))
        clusters.append((lo, hi, int(e - s + 1)))
    return Spectrum(values, float(eps_p), float(delta_z), clusters)


# -- Hausdorff distance -------------------------------------------------------


def _directed_hausdorff(a: FrontCloud, b: FrontCloud) -> float:
    """sup over a of the distance to b, in the product metric."""
    best = np.full(len(a), np.inf)
    chunk = max(1, int(2e6 / max(len(a), 1)))
    for s in range(0, len(b), chunk):
        qb = b.q[s:s + chunk]
        dq = np.abs(a.q[:, None, :] - qb[None, :, :])
        dq = np.minimum(dq, a.period - dq)
        d2 = (dq ** 2).sum(axis=2)
        d2 += ((a.p[:, None, :] - b.p[None, s:s + chunk, :]) ** 2).sum(axis=2)
        d2 += (a.z[:, None] - b.z[None, s:s + chunk]) ** 2
        best = np.minimum(best, d2.min(axis=1))
    return float(np.sqrt(best.max()))


def hausdorff(a: FrontCloud, b: FrontCloud) -> float:
    """Hausdorff distance: flat-torus metric on q, Euclidean on (p, z)."""
    if len(a) == 0 or len(b) == 0:
        raise InputError("Hausdorff distance needs nonempty clouds")
    if a.base_dim != b.base_dim:
        raise InputError("clouds have different base dimensions")
    return max(_directed_hausdorff(a, b), _directed_hausdorff(b, a))


# -- the limit experiment -----------------------------------------------------


@dataclass
class LevelSetReport:
    level: float
    n_points: int
    n_vertices: int
    nontriviality: NontrivialityReport | None

    def as_dict(self):
        return {
            "level": self.level,
            "n_points": self.n_points,
            "n_vertices": self.n_vertices,
            "nontriviality": (self.nontriviality.as_dict()
                              if self.nontriviality else None),
        }


@dataclass
class LimitReport:
    mode: str
    member_distances: list  # (name, distance)
    distances_decreasing: bool
    spectrum: Spectrum
    cup_length: int
    hypothesis_met: bool
    levels: list = field(default_factory=list)
    ladder: tuple = (1, 2, 3)

    @property
    def verdict(self):
        if not self.hypothesis_met:
            return "hypothesis-not-met"
        if any(l.nontriviality and l.nontriviality.verdict == "nontrivial"
               for l in self.levels):
            return "nontrivial"
        return "trivial"

    def as_dict(self):
        return {
            "mode": self.mode,
            "member_distances": [
                {"member": n, "distance": d} for n, d in self.member_distances
            ],
            "distances_decreasing": self.distances_decreasing,
            "spectrum": self.spectrum.as_dict(),
            "spec_size": len(self.spectrum.values),
            "cl": self.cup_length,
            "hypothesis_met": self.hypothesis_met,
            "ladder": list(self.ladder),
            "levels": [l.as_dict() for l in self.levels],
            "verdict": self.verdict,
        }


def snap_to_vertices(base: CubicalGrid, points_q: np.ndarray):
    """Nearest base grid vertices of torus points, as a vertex mask."""
    mask = np.zeros(base.n_vertices, dtype=bool)
    if len(points_q) == 0:
        return mask
    coords = []
    for a, ax in enumerate(base.axes):
        h = ax.period / ax.nodes
        coords.append(np.mod(np.rint(points_q[:, a] / h).astype(np.int64),
                             ax.nodes))
    flat = np.ravel_multi_index(tuple(coords),
                                tuple(ax.nodes for ax in base.axes))
    mask[flat] = True
    return mask


def verify_arnold_limit(base: CubicalGrid, members, limit_cloud: FrontCloud,
                        eps_p, delta_z=None, ladder=(1, 2, 3),
                        mode="hausdorff") -> LimitReport:
    """Check the few-spectral-values principle on a convergent sequence.

    members: list of (name, FrontCloud).  Distances of each member to the
    limit are reported (symmetric Hausdorff, or the directed distance for
    the neighborhood-containment reading).  When the limit spectrum has
    fewer values than the cup-length of the base, each spectrum level set
    is snapped to base vertices and tested for homological nontriviality.
    """
    if mode not in ("hausdorff", "containment"):
        raise InputError(f"unknown mode {mode!r}")
    dists = []
    for name, cloud in members:
        if mode == "hausdorff":
            dist = hausdorff(cloud, limit_cloud)
        else:
            dist = _directed_hausdorff(cloud, limit_cloud)
        dists.append((name, dist))
    decreasing = all(b[1] < a[1] for a, b in zip(dists, dists[1:]))
    spec = spectrum(limit_cloud, eps_p, delta_z)
    cl = cup_length(base)
    hypothesis_met = len(spec.values) > 0 and len(spec.values) < cl
    report = LimitReport(mode, dists, decreasing, spec, cl, hypothesis_met,
                         ladder=tuple(ladder))
    if not hypothesis_met:
        return report
    if limit_cloud.p.shape[1]:
        cloud_on_wall = np.max(np.abs(limit_cloud.p), axis=1) <= spec.eps_p
    else:
        cloud_on_wall = np.ones(len(limit_cloud), dtype=bool)
    for lam in spec.values:
        sel = cloud_on_wall & (np.abs(limit_cloud.z - lam) <= spec.delta_z)
        vmask = snap_to_vertices(base, limit_cloud.q[sel])
        n_pts = int(sel.sum())
        if not vmask.any():
            report.levels.append(LevelSetReport(lam, n_pts, 0, None))
            continue
        masks = [vmask] + [np.zeros(base.n_cells(d), dtype=bool)
                           for d in range(1, base.dim + 1)]
        sub = Subcomplex.closure(base, masks)
        report.levels.append(LevelSetReport(
            lam, n_pts, int(vmask.sum()),
            is_homologically_nontrivial(sub, ladder)))
    return report


# -- file formats -------------------------------------------------------------


def family_to_dict(fam: GeneratingFamily):
    res = [ax.nodes for ax in fam.fiber.axes]
    rad = [float(ax.coords[-1]) for ax in fam.fiber.axes]
    out = {
        "base": complex_to_dict(fam.base),
        "fiber_dim": fam.fiber_dim,
        "fiber_resolution": res[0] if res and all(r == res[0] for r in res) else res,
        "fiber_box_radius": rad[0] if rad and all(r == rad[0] for r in rad) else rad,
        "signature": [fam.i_minus, fam.i_plus],
        "boundary_tolerance": fam.boundary_tolerance,
        "values": [float(v) for v in fam.values.ravel()],
    }
    return out


def family_from_dict(data):
    for key in ("base", "fiber_dim", "signature", "values"):
        if key not in data:
            raise InputError(f"gfqi file is missing the {key!r} field")
    base = complex_from_dict(data["base"])
    base_dict = data["base"]
    if base_dict.get("kind") not in ("cubical_torus", "point"):
        raise InputError("base: gfqi bases must be cubical tori")
    k = int(data["fiber_dim"])
    sig = data["signature"]
    if len(sig) != 2:
        raise InputError("signature: expected [i_minus, i_plus]")
    res = data.get("fiber_resolution", 0)
    if isinstance(res, (int, float)):
        res = [int(res)] * k
    rad = data.get("fiber_box_radius", 0.0)
    if isinstance(rad, (int, float)):
        rad = [float(rad)] * k
    if len(res) != k or len(rad) != k:
        raise InputError("fiber_resolution/fiber_box_radius do not match fiber_dim")
    fiber = CubicalGrid([bounded_axis(int(m), float(r))
                         for m, r in zip(res, rad)])
    tol = float(data.get("boundary_tolerance", 0.0))
    return GeneratingFamily(base, fiber, int(sig[0]), int(sig[1]),
                            np.asarray(data["values"], dtype=float),
                            tol)


def save_family(fam, path):
    with open(path, "w") as fh:
        json.dump(family_to_dict(fam), fh, sort_keys=True)
        fh.write("\n")


def load_family(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: not valid JSON ({e})") from None
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None
    try:
        return family_from_dict(data)
    except InputError as e:
        raise InputError(f"{path}: {e}") from None


def save_cloud(cloud: FrontCloud, path):
    d = cloud.base_dim
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([f"q{i+1}" for i in range(d)]
                        + [f"p{i+1}" for i in range(d)] + ["z"])
        for i in range(len(cloud)):
            row = [repr(float(v)) for v in cloud.q[i]]
            row += [repr(float(v)) for v in cloud.p[i]]
            row.append(repr(float(cloud.z[i])))
            writer.writerow(row)


def load_cloud(path):
    try:
        with open(path, newline="") as fh:
            rows = [r for r in csv.reader(fh) if r]
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None
    if not rows:
        raise InputError(f"{path}: empty front cloud file")
    header = [h.strip().lower() for h in rows[0]]
    if header[-1] != "z" or len(header) % 2 == 0:
        raise InputError(f"{path}: expected header q1,...,p1,...,z")
    d = (len(header) - 1) // 2
    data = np.asarray([[float(x) for x in r] for r in rows[1:]], dtype=float)
    if data.ndim != 2 or data.shape[1] != 2 * d + 1:
        raise InputError(f"{path}: rows do not match the header")
    return FrontCloud(data[:, :d], data[:, d:2 * d], data[:, -1],
                      provenance="loaded")
